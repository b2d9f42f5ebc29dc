# Small universes and univalence instances
#
# A universe is a fibration U_dot -> U.  Two universes are built in:
# finite sets with bijections, and the delooping BG -> 1 of a group.

from pathcat.constructions import delooping_universe, finset_universe
from pathcat.groupoids import delooping, discrete, terminal
from pathcat.groups import cyclic_group, symmetric_group
from pathcat.univalence import (
    check_univalence_instance,
    complete_group_pair,
    enumerate_equivalences_over,
    is_complete_group,
    smallness_witness,
    weak_univalence_witness,
)

S3, Z2 = symmetric_group(3), cyclic_group(2)

# discrete(2) is small in finite sets of size <= 2.
w = smallness_witness(discrete(2), finset_universe(2))
print("discrete(2) classified by", w.classifier.obj_map.tolist())

# S3 is complete, so every equivalence between BS3-fibrations over a base
# comes with coherent homotopies.
print(is_complete_group(S3))
u = delooping_universe(S3)
insts = enumerate_equivalences_over(terminal(), u)
print(len(insts), "instances over the point")
for inst in insts:
    pair = complete_group_pair(inst, S3)
    assert pair.check(inst) == []

# For Z/2 the twist (c, x) -> (c, c + x) over B(Z/2) has no witness at all.
uz = delooping_universe(Z2)
missing = [inst for inst in enumerate_equivalences_over(delooping(Z2), uz)
           if check_univalence_instance(inst) is None]
print(len(missing), "instance(s) over B(Z/2) without a coherent pair")
print("weak witness:", weak_univalence_witness(missing[0]))
