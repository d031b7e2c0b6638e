"""Compare the presented homology of filled cable spaces with the gcd formula.

The presentation is assembled from the Seifert fibration of the cable space;
see docs/oracle_presentations.md.
"""
from surgcalc.oracle import CablePattern, ParamBox, PatternSpace, check_filled_pattern_h1
from surgcalc.slopes import Slope
from surgcalc.surgery import filled_pattern_homology

space = PatternSpace(CablePattern(5, 2))
print("relations:", space.pres.relations, "generators:", space.pres.generators)
print("mu =", space.mu, " lambda =", space.lam, " mu_P =", space.mu_p, " lambda_P =", space.lam_p)
print("fibre slope on the pattern torus:", space.fibre_slope_on_pattern())

for slope in (Slope(6, 5), Slope(7, 3), Slope(4, 1)):
    print(slope, "presented:", space.filled_h1(slope), " formula:", filled_pattern_homology(2, slope),
          " rational longitude:", space.rational_longitude(slope))

report = check_filled_pattern_h1(CablePattern(5, 2), ParamBox(p=(-50, 50), q=(1, 9)))
print(f"{report.checked} fillings checked, {len(report.violations)} mismatches")
