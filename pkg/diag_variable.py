"""Diagnostic: validate the variable-gadget fixture end to end."""
from fractions import Fraction
from itertools import combinations, permutations

from hsforge.gadgets import build_variable, variable_fixture, variable_point_for
from hsforge.geometry import Location
from hsforge.visibility import (
    FastDomain,
    check_cover,
    essentially_fixed_chain,
    SpectatorGroup,
)
from hsforge.oracle import brute_force_lower_bound

inst = variable_fixture()
inst.validate()
print("domain validates; outer ring size:", len(inst.domain.outer))

fast = FastDomain(inst.domain)
names = ["sky_l", "sky_r", "vl", "vr"]
spects = list(inst.spectators)
for n, p in zip(names, spects):
    print(f"  {n} = ({p.x}, {p.y})  loc={fast.locate(p)}")

bird = variable_point_for(inst.gadgets[0], Fraction(0))
print("bird at value 0:", (bird.x, bird.y), fast.locate(bird))

print("\npairwise visibility (must all be False):")
labeled = list(zip(names + ["bird"], spects + [bird]))
bad = False
for (na, a), (nb, b) in combinations(labeled, 2):
    v = fast.sees(a, b)
    if v:
        bad = True
    print(f"  {na} ~ {nb}: {'SEES  <-- problem' if v else 'hidden'}")

print("\ncover check:")
res = check_cover(inst.domain, inst.gadgets[0].cover)
print(" ", res)

print("\nchain orders:")
groups = {n: SpectatorGroup.build([p]) for n, p in zip(names, spects)}
confirmed = []
for order in permutations(names):
    chain = [groups[n] for n in order]
    r = essentially_fixed_chain(
        inst.domain, chain, exempt_regions=inst.gadgets[0].cover.regions
    )
    tag = "CONFIRMED" if r.confirmed else f"violation idx={r.index} wit={r.witness}"
    if r.confirmed:
        confirmed.append(order)
    print(f"  {order}: {tag}")
    if confirmed:
        break

print("\nbrute force:")
bf = brute_force_lower_bound(inst.domain, budget=400, hints=[bird])
print("  size =", bf.size, "complete =", bf.complete)
for p in bf.placement:
    print("   ", (str(p.x), str(p.y)))
