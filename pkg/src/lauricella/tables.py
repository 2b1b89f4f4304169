"""Closed-form Christoffel tables for every configuration with n <= 5.

Each table is a list of chains ``"G3_11=-G3_13 = expr"``: every listed entry
(with its sign) equals the right-hand side.  ``Gk_ij`` is Γ^k_{ij}; ``uK`` is
the coordinate u^K and ``eK`` is the weight of the block whose first flat
index is K.  Right-hand sides may refer to other entries of the same table.

The reference lists leave out a handful of entries and carry one misprinted
coefficient.  ``ERRATA`` holds the completed or corrected chains; they are
applied by default and can be switched off to compare against the raw lists.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .connection import ChristoffelTable, _coords, _require_regular
from .errors import MalformedInput, UnsupportedDimension
from .jordan import BlockConfig
from .kernel import is_zero

REFERENCE = {
    (2,): [
        "G2_22 = -2*e1/u2",
    ],
    (3,): [
        "G2_22=G3_23 = -3*e1/u2",
        "G3_22 = 3*e1*u3/u2**2",
    ],
    (2, 1): [
        "G2_22 = -2*e1/u2",
        "G1_13=G2_23=-G1_11=-G1_33=-G2_12 = e3/(u1-u3)",
        "G3_11=G3_33=-G3_13 = 2*e1/(u1-u3)",
        "G2_11=G2_33=-G2_13 = e3*u2/(u1-u3)**2",
    ],
    (4,): [
        "G2_22=G3_23=G4_33=G4_24 = -4*e1/u2",
        "G3_22=G4_23 = 4*e1*u3/u2**2",
        "G4_22 = 4*e1*(u2*u4-u3**2)/u2**3",
    ],
    (3, 1): [
        "G2_22=G3_23 = -3*e1/u2",
        "G3_11=G3_44=-G3_14 = e4*u3/(u1-u4)**2 - e4*u2**2/(u1-u4)**3",
        "G4_11=G4_44=-G4_14 = 3*e1/(u1-u4)",
        "G3_12=-G3_24=-G2_14=G2_11=G2_44 = e4*u2/(u1-u4)**2",
        "G3_34=-G3_13=-G2_12=-G1_11=G1_14=-G1_44 = e4/(u1-u4)",
        "G3_22 = 3*e1*u3/u2**2 - e4/(u1-u4)",
    ],
    (2, 2): [
        "G2_22 = -2*e1/u2",
        "G4_44 = -2*e3/u4",
        "G1_13=-G2_12=-G1_11=-G1_33 = 2*e3/(u1-u3)",
        "G3_11=G4_34=G3_33=-G3_13=-G4_14 = 2*e1/(u1-u3)",
        "G2_11=G2_33=-G2_13 = 2*e3*u2/(u1-u3)**2",
        "G4_11=G4_33=-G4_13 = 2*e1*u4/(u1-u3)**2",
    ],
    (2, 1, 1): [
        "G2_22 = -2*e1/u2",
        "G1_13=G2_23=-G1_33 = e3/(u1-u3)",
        "G1_14=G2_24=-G1_44 = e4/(u1-u4)",
        "G3_34=-G3_44 = e4/(u3-u4)",
        "G4_34 = -e3/(u3-u4)",
        "G3_13=-G3_11 = -2*e1/(u1-u3)",
        "G4_14 = -2*e1/(u1-u4)",
        "G1_11=G2_12 = G1_33+G1_44",
        "G2_11 = G2_33+G2_44",
        "G2_33=-G2_13 = e3*u2/(u1-u3)**2",
        "G2_44=-G2_14 = e4*u2/(u1-u4)**2",
        "G3_33 = 2*e1/(u1-u3) - e4/(u3-u4)",
        "G4_44 = 2*e1/(u1-u4) + e3/(u3-u4)",
    ],
    (5,): [
        "G2_22=G3_23=G4_33=G4_24=G5_25=G5_34 = -5*e1/u2",
        "G3_22=G4_23=G5_24=G5_33 = 5*e1*u3/u2**2",
        "G4_22=G5_23 = 5*e1*(u2*u4-u3**2)/u2**3",
        "G5_22 = 5*e1*(u2**2*u5-2*u2*u3*u4+u3**3)/u2**4",
    ],
    (4, 1): [
        "G2_22=G3_23=G4_24=G4_33 = -4*e1/u2",
        "G1_15=G2_25=G3_35=G4_45 = e5/(u1-u5)",
        "G1_55=G2_12=G1_11=G3_13=G4_14=G4_41 = -e5/(u1-u5)",
        "G5_11=G5_55=-G5_15 = 4*e1/(u1-u5)",
        "G2_11=G2_55=G3_12=G4_13=-G2_15=-G3_25=-G4_35=-G4_53 = e5*u2/(u1-u5)**2",
        "G3_11=G3_55=G4_12=-G3_15=-G4_25 = e5*u3/(u1-u5)**2 - e5*u2**2/(u1-u5)**3",
        "G3_22=G4_23 = 4*e1*u3/u2**2 - e5/(u1-u5)",
        "G4_11=G4_55=-G4_15 = e5*u2**3/(u1-u5)**4 - 2*e5*u2*u3/(u1-u5)**3 + e5*u4/(u1-u5)**2",
        "G4_22 = 4*e1*(u2*u4-u3**2)/u2**3 + e5*u2/(u1-u5)**2",
    ],
    (3, 2): [
        "G1_14=G2_24=G3_34=-G1_11=-G1_44=-G2_12=-G3_13 = 2*e4/(u1-u4)",
        "G2_11=G2_44=G3_12=-G2_14=-G3_24 = 2*u2*e4/(u1-u4)**2",
        "G2_22=G3_23 = -3*e1/u2",
        "G5_55 = -2*e4/u5",
        "G3_22 = 3*e1*u3/u2**2 - 2*e4/(u1-u4)",
        "G3_11=G3_44=-G3_14 = 2*e4*(u1*u3-u2**2-u3*u4)/(u1-u4)**3",
        "G4_11=G4_44=-G4_14=-G5_15=G5_45 = 3*e1/(u1-u4)",
        "G5_11=G5_44=-G5_14 = 3*u5*e1/(u1-u4)**2",
    ],
    (3, 1, 1): [
        "G3_23=G2_22 = -3*e1/u2",
        "G1_14=G2_24=G3_34=-G1_44 = e4/(u1-u4)",
        "G1_15=G2_25=G3_35=-G1_55 = e5/(u1-u5)",
        "G4_45=-G4_55 = e5/(u4-u5)",
        "G5_44=-G5_45 = e4/(u4-u5)",
        "G4_11=-G4_14 = 3*e1/(u1-u4)",
        "G5_11=-G5_15 = 3*e1/(u1-u5)",
        "G2_11=G3_12 = e4*u2/(u1-u4)**2 + e5*u2/(u1-u5)**2",
        "G2_44=-G2_14=-G3_24 = u2*e4/(u1-u4)**2",
        "G2_55=-G2_15=-G3_25 = u2*e5/(u1-u5)**2",
        "G1_11=G2_12=G3_13 = -e4/(u1-u4) - e5/(u1-u5)",
        "G3_11 = e4*(-u2**2+(u1-u4)*u3)/(u1-u4)**3 + e5*(-u2**2+(u1-u5)*u3)/(u1-u5)**3",
        "G3_44=-G3_14 = e4*(u1*u3-u2**2-u3*u4)/(u1-u4)**3",
        "G3_55=-G3_15 = e5*(u1*u3-u2**2-u3*u5)/(u1-u5)**3",
        "G4_44 = 3*e1/(u1-u4) - e5/(u4-u5)",
        "G5_55 = 3*e1/(u1-u5) + e4/(u4-u5)",
        "G3_22 = 3*u3*e1/u2**2 - e4/(u1-u4) - e5/(u1-u5)",
    ],
    (2, 2, 1): [
        "G1_11=G2_12 = -2*e3/(u1-u3) - e5/(u1-u5)",
        "G3_33=G4_34 = 2*e1/(u1-u3) - e5/(u3-u5)",
        "-G1_13=G1_33 = -2*e3/(u1-u3)",
        "G1_15=G2_25=-G1_55 = e5/(u1-u5)",
        "G2_11 = 2*u2*e3/(u1-u3)**2 + u2*e5/(u1-u5)**2",
        "G2_33=-G2_13 = 2*u2*e3/(u1-u3)**2",
        "G2_55=-G2_15 = u2*e5/(u1-u5)**2",
        "G2_22 = -2*e1/u2",
        "G4_44 = -2*e3/u4",
        "G2_23 = 2*e3/(u1-u3)",
        "G3_11=-G3_13=-G4_14 = 2*e1/(u1-u3)",
        "G3_35=G4_45=-G3_55 = e5/(u3-u5)",
        "G4_11=-G4_13 = 2*e1*u4/(u1-u3)**2",
        "G4_33 = 2*u4*e1/(u1-u3)**2 + u4*e5/(u3-u5)**2",
        "G4_55=-G4_35 = u4*e5/(u3-u5)**2",
        "G5_11=-G5_15 = 2*e1/(u1-u5)",
        "G5_33=-G5_35 = 2*e3/(u3-u5)",
        "G5_55 = 2*e1/(u1-u5) + e3/(u3-u5)",
    ],
    (2, 1, 1, 1): [
        "G1_11=G2_12 = -e3/(u1-u3) - e4/(u1-u4) - e5/(u1-u5)",
        "G1_13=-G1_33 = e3/(u1-u3)",
        "G1_14 = e4/(u1-u4)",
        "G1_15=-G1_55 = e5/(u1-u5)",
        "G1_44 = -e4/(u1-u4)",
        "G2_11 = e3*u2/(u1-u3)**2 + e4*u2/(u1-u4)**2 + e5*u2/(u1-u5)**2",
        "G2_13 = -u2*e3/(u1-u3)**2",
        "G2_14 = -u2*e4/(u1-u4)**2",
        "G2_15 = -u2*e5/(u1-u5)**2",
        "G2_22 = -2*e1/u2",
        "G2_23 = e3/(u1-u3)",
        "G2_24 = e4/(u1-u4)",
        "G2_25 = e5/(u1-u5)",
        "G2_33 = u2*e3/(u1-u3)**2",
        "G2_44 = u2*e4/(u1-u4)**2",
        "G2_55 = u2*e5/(u1-u5)**2",
        "G3_11=-G3_13 = 2*e1/(u1-u3)",
        "G3_33 = 2*e1/(u1-u3) - e4/(u3-u4) - e5/(u3-u5)",
        "G3_34=-G3_44 = e4/(u3-u4)",
        "G3_35=-G3_55 = e5/(u3-u5)",
        "G4_11=-G4_14 = 2*e1/(u1-u4)",
        "G4_33=-G4_34 = e3/(u3-u4)",
        "G4_44 = 2*e1/(u1-u4) + e3/(u3-u4) - e5/(u4-u5)",
        "G4_45=-G4_55 = e5/(u4-u5)",
        "G5_11=-G5_15 = 2*e1/(u1-u5)",
        "G5_33=-G5_35 = e3/(u3-u5)",
        "G5_44=-G5_45 = e4/(u4-u5)",
        "G5_55 = 2*e1/(u1-u5) + e3/(u3-u5) + e4/(u4-u5)",
    ],
}

# Completions and corrections, each written in the same closed-form style.
# Every one is forced by the unit condition Σ_σ Γ^i_{1(σ)j} = 0 applied to
# entries that the reference list does give.
ERRATA: dict = {
    (3, 1): [
        {"chain": "G2_24 = e4/(u1-u4)", "replaces": None,
         "reason": "omitted; G2_12 + G2_24 = 0"},
    ],
    (2, 2): [
        {"chain": "G2_23 = 2*e3/(u1-u3)", "replaces": None,
         "reason": "omitted; G2_12 + G2_23 = 0"},
    ],
    (2, 1, 1): [
        {"chain": "G4_11 = 2*e1/(u1-u4)", "replaces": None,
         "reason": "omitted; G4_11 + G4_13 + G4_14 = 0 with G4_13 = 0"},
        {"chain": "G4_33 = e3/(u3-u4)", "replaces": None,
         "reason": "omitted; G4_13 + G4_33 + G4_34 = 0"},
    ],
    (2, 2, 1): [
        {"chain": "G5_55 = 2*e1/(u1-u5) + 2*e3/(u3-u5)",
         "replaces": "G5_55 = 2*e1/(u1-u5) + e3/(u3-u5)",
         "reason": "misprinted factor m=2 on the e3 term; G5_15 + G5_35 + G5_55 = 0"},
    ],
}

_NAME = re.compile(r"G(\d)_(\d)(\d)")


def _parse_lhs(token: str):
    token = token.strip()
    sign = 1
    if token.startswith("-"):
        sign, token = -1, token[1:].strip()
    m = _NAME.fullmatch(token)
    if not m:
        raise MalformedInput(f"bad table entry {token!r}")
    k, i, j = (int(x) for x in m.groups())
    return sign, (k, min(i, j), max(i, j))


def _evaluate(chains, u: dict, e: dict) -> dict:
    env = {f"u{k}": v for k, v in u.items()}
    env.update({f"e{k}": v for k, v in e.items()})
    known: dict = {}
    pending = list(chains)
    while pending:
        progress = []
        for chain in pending:
            *lhs, rhs = chain.split("=")
            refs = {(int(a), min(int(b), int(c)), max(int(b), int(c))) for a, b, c in _NAME.findall(rhs)}
            if not refs <= known.keys():
                continue
            local = dict(env)
            local.update({f"G{k}_{i}{j}": known[(k, i, j)] for (k, i, j) in refs})
            local.update({f"G{k}_{j}{i}": known[(k, i, j)] for (k, i, j) in refs})
            value = eval(rhs, {"__builtins__": {}}, local)  # noqa: S307 - fixed strings in this module
            for token in lhs:
                sign, key = _parse_lhs(token)
                v = value if sign == 1 else -value
                if key in known and known[key] != v:
                    raise MalformedInput(f"table assigns two different values to G{key}")
                known[key] = v
            progress.append(chain)
        if not progress:
            raise MalformedInput(f"unresolvable references in {pending}")
        pending = [c for c in pending if c not in progress]
    return known


def smalldim_chains(sizes: Sequence[int], corrected: bool = True) -> list:
    sizes = tuple(sizes)
    if sizes not in REFERENCE:
        raise UnsupportedDimension(f"no closed-form table for sizes {sizes}")
    chains = list(REFERENCE[sizes])
    if corrected:
        for fix in ERRATA.get(sizes, []):
            if fix["replaces"] is not None:
                chains.remove(fix["replaces"])
            chains.append(fix["chain"])
    return chains


def gamma_smalldim_oracle(config: BlockConfig, point: Sequence, corrected: bool = True) -> ChristoffelTable:
    """Evaluate the closed-form table for ``config.sizes`` at ``point``."""
    if config.n > 5 or tuple(config.sizes) not in REFERENCE:
        raise UnsupportedDimension(f"no closed-form table for sizes {config.sizes}")
    pt = _coords(config, point)
    _require_regular(config, pt)
    u = {k + 1: v for k, v in enumerate(pt)}
    e = {config.flat_index(a, 1): Fraction(config.weight(a)) for a in range(1, config.r + 1)}
    chains = smalldim_chains(config.sizes, corrected)
    values = _evaluate(chains, u, e)
    return ChristoffelTable(config, pt, {key: v for key, v in values.items() if not is_zero(v)})
