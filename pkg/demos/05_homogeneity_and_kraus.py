# Homogeneity and the monomorphism argument
#
# For an abelian group the map theta(g, h, k) = (g, h, h g^-1 k) on BG^3
# lives over BG^2 and sends the section s0 to s1.

from pathcat.constructions import finset_universe
from pathcat.groupoids import GroupoidMap, constant_map, discrete, interval
from pathcat.groups import cyclic_group, symmetric_group
from pathcat.kraus import (
    abelian_theta,
    kraus_main,
    search_homogeneity,
    theta_value,
    truncation_mono_check,
    u_homogenize,
)
from pathcat.univalence import smallness_witness

hw = abelian_theta(cyclic_group(3))
print("theta(1, 2, 1) =", theta_value(hw, (1, 2, 1)))
print({k: v for k, v in hw.notes.items()})

# The truncation of BG -> 1 is monic only for the trivial group.
for grp in (cyclic_group(1), cyclic_group(2), symmetric_group(3)):
    print(grp.name, truncation_mono_check(grp).monic)

# End to end: A = discrete(2) is homogeneous and small in finite sets, m is
# the endpoint inclusion into I, s is constant.  Realignment gives j with
# j o m equal to the classifier of A, which forces m to be monic.

u = finset_universe(2)
A, I = discrete(2), interval()
m = GroupoidMap(A, I, [0, 1], [0, 3])
sw = smallness_witness(A, u)
uhw = u_homogenize(search_homogeneity(A), sw, u)
cert = kraus_main(uhw, sw, m, constant_map(I, A, 0))
print("strict:", cert.strict, "iota monic:", cert.iota_monic, "m monic:", cert.m_monic)
