"""Exact hyperbolic sums of prime-factor counts over gcd/lcm tuples."""

from ._hypersum import *  # noqa: F401,F403
from ._hypersum import __doc__  # noqa: F401
