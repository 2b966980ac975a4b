"""Selection maps survive products and retractions."""
from posetfix import find_selection_map, verify_selection
from posetfix.dismantle import find_retraction
from posetfix.selection import product_selection, transfer_selection_along_retract
from posetfix.zoo import chain

phi = product_selection(find_selection_map(chain(2)), find_selection_map(chain(3)))
print(f"product 2x3: selection over {len(phi.mapspace)} maps, verified {verify_selection(phi.X, phi)[0]}")

s, r = find_retraction(chain(4), chain(2))
psi = transfer_selection_along_retract(find_selection_map(chain(4)), s, r)
print(f"2-chain as retract of 4-chain via s={list(s.image)}, r={list(r.image)}: choice {psi.choice}")
