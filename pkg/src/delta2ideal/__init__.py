"""Verification artifact for delta(2)-ideal non-Hopf hypersurface families in CP^2.

Two halves:

* an exact-arithmetic certificate pipeline that replays every symbolic
  elimination step of the classification argument against golden
  polynomial fixtures, and
* a numerical lab that integrates the defining ODE system, rebuilds the
  shape operator and frame connection, and checks the delta(2) equality
  together with the Gauss and Codazzi structure equations.
"""

__version__ = "0.1.0"
