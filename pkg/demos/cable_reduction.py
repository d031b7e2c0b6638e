"""Walk through a cable reduction and the filled torus knot exterior.

Surgery on the (5,2)-cable of the trefoil along 29/3 reduces to surgery on
the trefoil along 29/12, which is a closed Seifert fibred space with three
cone points.
"""
from surgcalc import Slope, cable_reduce, jsj, parse, surger

knot = parse("C(5,2;T(3,2))")
slope = Slope(29, 3)

print("JSJ pieces of the exterior:")
for piece in jsj(knot).pieces:
    print("  ", piece.kind, piece.params(), piece.seifert.to_dict()["fibre_slopes"])

# |q r s - p| = |3*5*2 - 29| = 1, so the cable space fills to a solid torus
print("reduced slope:", cable_reduce(5, 2, slope))

result = surger(knot, slope)
print("filled piece:", result.surgered)
print("H_1 order:", result.h1_order)

# a slope where nothing reduces: the cable space survives as a Seifert piece
other = surger(parse('C(5,2;Hyp("J"))'), Slope(7, 3))
print("C(5,2;Hyp(J)) at 7/3:", other.surgered.seifert.cone_orders, "+", other.survivors())
