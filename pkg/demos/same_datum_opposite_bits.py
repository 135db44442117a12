"""Two triples with identical congruence and Legendre data but opposite
residual bits: the bit is genuinely new arithmetic information.

The classical datum is the 6-tuple (p mod 8, q mod 8, s mod 8, (q/p), (s/p),
(q/s)). If the final unit generator were a function of it, these two triples
would have to agree. They do not.
"""

from unitcert import classical_datum, delta, noncollapse_check

A, B = (7, 19, 3), (7, 3, 59)

for triple in (A, B):
    print(f"datum{triple} = {classical_datum(*triple).as_tuple()}")

print("\nresolving each bit:")
for triple in (A, B):
    cert = delta(*triple, with_fsu=False)
    print(f"  {triple}: t = {cert.place.t}, Theta residue {cert.theta_residue}, "
          f"legendre {cert.legendre_theta} -> delta = {cert.delta}, mu = {cert.mu}")

ok, report = noncollapse_check(A, B)
print(f"\nsame datum, different bits: {ok}")
print("so no classification by the classical datum alone can be complete;")
print("the refined datum must carry delta explicitly:")
for key in ("triple1", "triple2"):
    row = report[key]
    print(f"  D#{row['triple']} = ({', '.join(map(str, row['datum']))}; delta={row['delta']})")
