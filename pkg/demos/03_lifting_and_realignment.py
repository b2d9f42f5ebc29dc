# Lifting problems and realignment along a cofibration

from pathcat.groupoids import GroupoidMap, NaturalIso, compose_maps, discrete, interval, terminal_map
from pathcat.lifting import LiftingProblem, realign, solve_lifting
from pathcat.search import find_natural_iso

I = interval()
incl = GroupoidMap(discrete(2), I, [0, 1], [0, 3])

# The endpoints of I lift against I -> 1: the diagonal is the identity.

sq = LiftingProblem(incl, terminal_map(I), incl, terminal_map(I))
filler = solve_lifting(sq)
print("diagonal:", filler.diagonal.object_dict(), filler.check(sq))

# Realignment: given g: I -> I and a homotopy h: g o m => f, produce g'
# homotopic to g with g' o m = f on the nose.  Here f swaps the endpoints.

g = GroupoidMap(I, I, [0, 1], [0, 1, 2, 3])
f = GroupoidMap(discrete(2), I, [1, 0], [3, 0])
h = NaturalIso(compose_maps(g, incl), f, [1, 2])  # components 0 -> 1 and 1 -> 0

res = realign(incl, f, g, h)
print("g' o m == f:", compose_maps(res.g_prime, incl) == f)
print("g' ~ g:", find_natural_iso(g, res.g_prime) is not None)
print("g' on objects:", res.g_prime.obj_map.tolist())
