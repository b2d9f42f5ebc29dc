# Pullbacks, path objects, factorizations and truncation

from pathcat.constructions import factor_we_fib, path_object, pullback, truncate
from pathcat.groupoids import compose_maps, constant_map, delooping, discrete, interval, terminal, terminal_map
from pathcat.groups import cyclic_group, symmetric_group
from pathcat.classifiers import is_equivalence, is_isofibration

BS3 = delooping(symmetric_group(3))

# Pullback of BS3 -> 1 along discrete(2) -> 1 is two copies of BS3.  The
# certificate records commutativity and the probe-based universality check.

sq = pullback(terminal_map(BS3), terminal_map(discrete(2)))
print(sq.apex.n_objects, sq.apex.n_morphisms, sq.certificate.valid)

# The path object of a groupoid is its arrow groupoid, with r picking out
# identities and p = (p0, p1) the two endpoints.

po = path_object(BS3)
print("P(BS3):", po.total.n_objects, "objects,", po.total.n_morphisms, "morphisms")
print("invariants:", po.check() or "ok")

# Any map factors as a weak equivalence followed by a fibration.

f = constant_map(terminal(), interval(), 0)
fac = factor_we_fib(f)
print(is_equivalence(fac.we_part).verdict, is_isofibration(fac.fib_part).verdict)
print(compose_maps(fac.fib_part, fac.we_part) == f)

# Truncating B(Z/3) -> 1 collapses every loop: the middle object is the point.

i, f_prime, tr = truncate(terminal_map(delooping(cyclic_group(3))))
print("truncated:", tr.n_objects, "object,", tr.n_morphisms, "morphism")
