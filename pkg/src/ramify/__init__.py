"""Exact-arithmetic homological algebra for cyclic-group cochain rings.

The package mechanizes a chain of computations: formal group law
p-series and their Weierstrass factorizations, finite quotient rings
presented by the distinguished relation, periodic minimal resolutions
and the Tor/Kunneth bookkeeping they feed, socle series and Betti
numbers over small Artinian algebras, a divided-power model of the
Eilenberg-Moore spectral sequence for cyclic groups, and p-nilpotence
checks for small permutation groups.
"""

__version__ = "0.1.0"
