"""Compare end spaces: normal forms, rank invariants and derivative fingerprints.

    python3 demos/homeomorphism.py
"""

from endspace import derivative_fingerprint, is_homeomorphic, normalize, parse_term, print_term

PAIRS = [
    ("sum(omega(pt), pt)", "omega(pt)"),
    ("omega(omega(pt))", "ord(2,1,none)"),
    ("sum(cantor, cantor, pt)", "sum(cantor, pt)"),
    ("cacc(pt)", "cantor"),
    ("ord(1,1,all)", "ord(1,1,none)"),
]

for a, b in PAIRS:
    ta, tb = parse_term(a), parse_term(b)
    print(f"{a}  vs  {b}: {is_homeomorphic(ta, tb)}")
    print(f"    normal forms: {print_term(normalize(ta))} | {print_term(normalize(tb))}")
    print(f"    first derivative steps: {derivative_fingerprint(ta, 3)} | {derivative_fingerprint(tb, 3)}")
