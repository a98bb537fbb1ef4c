"""Kernel selection: compiled extension when available, pure Python otherwise.

Set BOXQ_PURE=1 to force the pure-Python kernels (used by the benchmark
and by the parity tests).
"""

import os

from . import pure

if os.environ.get("BOXQ_PURE"):
    impl = pure
else:
    try:
        from . import _speed as impl  # type: ignore[attr-defined]
    except ImportError:
        impl = pure

IMPL = impl.IMPL
pnorm = impl.pnorm
padd = impl.padd
psub = impl.psub
pneg = impl.pneg
pscale = impl.pscale
pmul = impl.pmul
pcontent = impl.pcontent
pprim = impl.pprim
peval_int = impl.peval_int
peval_frac = impl.peval_frac
pdivmod_q = impl.pdivmod_q
pdivexact = impl.pdivexact
pdivides = impl.pdivides
pgcd = impl.pgcd
