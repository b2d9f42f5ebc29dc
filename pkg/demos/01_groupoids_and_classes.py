# Finite groupoids, functors and the classes of maps
#
# A groupoid here is a table of objects and morphisms with source, target,
# identity, inverse and composition stored as integer arrays.  The catalog
# gives the usual small examples.

from pathcat.groupoids import GroupoidMap, delooping, discrete, interval, standard_objects, terminal_map
from pathcat.groups import cyclic_group
from pathcat.classifiers import (
    is_cofibration,
    is_equivalence,
    is_isofibration,
    is_monomorphism,
    is_trivial_fibration,
)

for name, g in standard_objects().items():
    print(f"{name:12s} {g.n_objects} objects, {g.n_morphisms} morphisms")

# The inclusion of the two endpoints into the interval.  Morphism indices of
# the interval are (0,0), (0,1), (1,0), (1,1), so the identities sit at 0 and 3.

I = interval()
incl = GroupoidMap(discrete(2), I, [0, 1], [0, 3])

# Each classifier returns a certificate: truthy or falsy, with a witness
# explaining the verdict.

for check in (is_cofibration, is_monomorphism, is_isofibration, is_equivalence):
    cert = check(incl)
    print(f"{cert.kind:18s} {cert.verdict!s:5s} {cert.witness}")

# The map B(Z/2) -> 1 is a fibration and essentially surjective but not
# faithful, so not a trivial fibration.

bz2 = delooping(cyclic_group(2))
print(is_trivial_fibration(terminal_map(bz2)))
