"""A chain has the fixed point property; the crown does not."""
from posetfix import has_fpp
from posetfix.dismantle import core
from posetfix.zoo import chain, crown

for name, P in (("3-chain", chain(3)), ("crown", crown())):
    report = has_fpp(P)
    print(f"{name}: fixed point property {report.holds}")
    if report.witness is not None:
        print(f"  map without a fixed point: {list(report.witness.image)}")
    c = core(P)
    print(f"  beat points removed: {[x for x, _ in c.removal_sequence]}, core size {c.core.n}")
