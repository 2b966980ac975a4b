"""A nine-element poset with no beat points that still admits a selection map."""
import time

from posetfix import find_selection_map, has_fpp, verify_selection
from posetfix.dismantle import beat_points
from posetfix.zoo import rival

P = rival()
print("covers:", [(P.label(a), P.label(b)) for a, b in P.covers])
print("beat points:", beat_points(P))
print("fixed point property:", has_fpp(P).holds)

start = time.perf_counter()
phi = find_selection_map(P)
print(f"selection map over {len(phi.mapspace)} monotone self-maps in {time.perf_counter() - start:.2f}s")
print("verified:", verify_selection(P, phi)[0])
