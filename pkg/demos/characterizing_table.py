"""Effective characterizing-slope thresholds for a few satellites."""
from surgcalc import Slope, applicable_theorems, certify, parse

knots = [
    "Sum(T(3,2),T(5,2))",
    "C(3,2;Sum(T(3,2),T(5,2)))",
    "C(7,2;T(5,2))",
    "C(1,2;C(7,2;T(5,2)))",
    "T(3,2)",
    "Sum(T(3,2),Hyp(J))",
    "Hyp(J)",
]

for text in knots:
    rules = ", ".join(f"{b.theorem_id}: |q| >= {b.qmin}" for b in applicable_theorems(parse(text)))
    print(f"{text:30s} {rules or '-'}")

print()
e = parse("C(7,2;T(5,2))")
for q in (1, 5, 12, 13, 40):
    print(f"C(7,2;T(5,2)) at 1/{q}:", certify(e, Slope(1, q)))
