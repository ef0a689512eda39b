"""
Random problem instances for the fuzz and zero-gap suites. Every generator draws from the given numpy Generator only,
so a seed reproduces the suite.
"""

import numpy as np

from .core_linalg import eig_sym, symmetric_part
from .form_family import FormFamily
from .lure_system import LureSystem
from .norm_spec import NormSpec


def random_family(rng: np.random.Generator, p: float, n: int, s: int, conic: bool = False) -> FormFamily:
    """
    Family with standard normal forms and levels.
    """
    forms = list(rng.standard_normal((s + 1, n, n)))

    return FormFamily(forms=forms, rho=rng.standard_normal(s), spec=NormSpec(p=p), conic=conic)


def random_metzler_family(rng: np.random.Generator, n: int, s: int) -> FormFamily:
    """
    ℓ1 family with P₀ Metzler and -P₁, …, -P_s Metzler, strictly feasible at a random interior point of the
    simplex: each level exceeds the constraint value there by a margin drawn from [0.1, 1].

    Args:
        rng (np.random.Generator): Source of randomness.
        n (int): Dimension.
        s (int): Number of constraints.

    Returns:
        FormFamily: The family.
    """
    off_diagonal = ~np.eye(n, dtype=bool)

    objective = rng.standard_normal((n, n))
    objective[off_diagonal] = rng.uniform(0.0, 1.0, size=n * n - n)

    constraints = []
    for _ in range(s):
        form = rng.standard_normal((n, n))
        form[off_diagonal] = -rng.uniform(0.0, 1.0, size=n * n - n)
        constraints.append(form)

    interior = rng.uniform(0.2, 1.0, size=n)
    interior /= interior.sum()
    rho = np.array([form.sum(axis=0) @ interior for form in constraints]) + rng.uniform(0.1, 1.0, size=s)

    return FormFamily(forms=[objective, *constraints], rho=rho, spec=NormSpec(p=1))


def random_yakubovich_family(rng: np.random.Generator, n: int) -> FormFamily:
    """
    Euclidean family with one constraint and a Slater point: the level exceeds λ_min(P₁ˢ) by a margin in [0.1, 1].
    """
    objective, constraint = rng.standard_normal((2, n, n))
    lowest = float(eig_sym(symmetric_part(constraint)).values[-1])

    return FormFamily(
        forms=[objective, constraint],
        rho=[lowest + rng.uniform(0.1, 1.0)],
        spec=NormSpec(p=2),
    )


def random_scalar_lure(rng: np.random.Generator, d: int) -> LureSystem:
    """
    Single-channel system with sector [0, ϰ], ϰ drawn from [0.1, 3], and A shifted left by a random amount so that
    both stable and unstable loops occur.
    """
    A = rng.standard_normal((d, d)) - rng.uniform(0.5, 3.0) * np.eye(d)

    return LureSystem(
        A=A,
        B=rng.standard_normal(d),
        C=rng.standard_normal(d),
        sector_lo=0.0,
        sector_hi=rng.uniform(0.1, 3.0),
    )
