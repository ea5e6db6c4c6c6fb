"""The strong exchange on bases: the classical Boolean case, a subspace
example, and why the universal over y is taken below Y."""

from supermatroids import (
    BaseFamily,
    bases_of,
    boolean_lattice,
    diamond,
    subspace_lattice,
    uniform_ideal,
    verify_strong_exchange,
    verify_strong_exchange_atomic,
)
from supermatroids.errors import StrongExchangeRefuted

B3 = boolean_lattice(3)
B = bases_of(B3, uniform_ideal(B3, 2))
w, Yp, v = verify_strong_exchange_atomic(B3, B, "{1,2}", "{2,3}", "{2}")
print(f"B3, X={{1,2}}, Y={{2,3}}: w={w}, v={v}, X-w+v={B3.join('{2}', v)}, Y+w-v={Yp}")

L = subspace_lattice(2, 3)
B = bases_of(L, uniform_ideal(L, 2))
X, Y = "span(100,010)", "span(100,001)"
wit = verify_strong_exchange(L, B, X, Y, L.meet(X, Y))
print(f"\nplanes {X}, {Y}:")
print(" ", wit.to_json())

M3 = diamond(3)
Bab = BaseFamily(M3, ["a", "b"])
print("\nM3 with bases {a, b}, X=a, Y=b, X_ring=bot")
print("  restricted to y <= Y:", verify_strong_exchange(M3, Bab, "a", "b", "bot").to_json())
try:
    verify_strong_exchange(M3, Bab, "a", "b", "bot", literal=True)
except StrongExchangeRefuted as ex:
    print("  every y:", ex)
