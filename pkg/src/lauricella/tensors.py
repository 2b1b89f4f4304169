"""Dense tensor helpers, the covariant exterior derivative, and curvature.

Dense tensors are nested lists with 0-based indices; entries are rationals
or :class:`Jet1` values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MalformedInput
from .kernel import Jet1, value_of

ZERO = Fraction(0)


def dense(table, n: int | None = None) -> list:
    """G[k][i][j] from a symmetric sparse table (1-based keys)."""
    n = table.n if n is None else n
    G = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (k, i, j), v in table.entries.items():
        G[k - 1][i - 1][j - 1] = v
        G[k - 1][j - 1][i - 1] = v
    return G


def values(T):
    """Strip jets down to plain values, recursively."""
    if isinstance(T, list):
        return [values(x) for x in T]
    return value_of(T)


def d(x, s: int):
    """0-based partial of a scalar: zero for plain rationals."""
    return x.partials[s] if isinstance(x, Jet1) else ZERO


def d_nabla(T, G) -> list:
    """(d_∇T)^i_{jk} = ∂_j T^i_k - ∂_k T^i_j + Γ^i_{jl} T^l_k - Γ^i_{kl} T^l_j.

    ``T[i][k]`` holds T^i_k with exact partials (Jet1) when it is not constant.
    ``G`` is a dense Γ; only its values are used.
    """
    n = len(T)
    if any(len(row) != n for row in T) or len(G) != n:
        raise MalformedInput("shape mismatch between T and Γ")
    Tv = values(T)
    Gv = values(G)
    out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        Gi = Gv[i]
        for j in range(n):
            for k in range(j + 1, n):
                acc = d(T[i][k], j) - d(T[i][j], k)
                for l in range(n):
                    acc += Gi[j][l] * Tv[l][k] - Gi[k][l] * Tv[l][j]
                out[i][j][k] = acc
                out[i][k][j] = -acc
    return out


def curvature(G) -> list:
    """R^k_{ijl} = ∂_jΓ^k_{il} - ∂_iΓ^k_{jl} + Γ^k_{js}Γ^s_{il} - Γ^k_{is}Γ^s_{jl} as R[k][i][j][l].

    ``G`` must carry Jet1 entries wherever Γ is not constant.
    """
    n = len(G)
    Gv = values(G)
    R = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for k in range(n):
        Gk = G[k]
        Gkv = Gv[k]
        for i in range(n):
            for j in range(i + 1, n):
                for l in range(n):
                    acc = d(Gk[i][l], j) - d(Gk[j][l], i)
                    for s in range(n):
                        acc += Gkv[j][s] * Gv[s][i][l] - Gkv[i][s] * Gv[s][j][l]
                    R[k][i][j][l] = acc
                    R[k][j][i][l] = -acc
    return R


def flat_items(T, prefix=()):
    """Yield (1-based index tuple, entry) over a nested dense tensor."""
    if isinstance(T, list):
        for a, x in enumerate(T):
            yield from flat_items(x, prefix + (a + 1,))
    else:
        yield prefix, T
