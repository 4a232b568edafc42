"""The shipped bracket tables.

Slot names: ``H D K`` bosonic generators, ``Q+1`` etc. ladder supercharges,
``S+1`` etc. conformal supercharges, ``X3 X+ X-`` / ``Y3 Y+ Y-`` internal
SO(3) triples, ``T3 T+ T-`` and ``L+1``/``R+1`` for the regrouped algebra.
All signs are the ones that hold for the shipped matrix conventions.
"""

from .closure import AlgebraTable, Relation, term

SIGNS = ("+", "-")
INDICES = (1, 2)


def _flip(sign: str) -> str:
    return "-" if sign == "+" else "+"


def _sgn(sign: str) -> int:
    return 1 if sign == "+" else -1


def _other(mu: int) -> int:
    return 3 - mu


def _nilpotent(group: str, a: str, b: str) -> list:
    """{a±μ, b±ν} = 0 for equal signs."""
    pairs = ((1, 1), (1, 2), (2, 2)) if a == b else tuple((m, n) for m in INDICES for n in INDICES)
    return [
        Relation(group, f"{a}{s}{mu}", f"{b}{s}{nu}", "anticomm")
        for s in SIGNS
        for mu, nu in pairs
    ]


def _diagonal(group: str, a: str, b: str, rhs: tuple) -> list:
    """{a+μ, b-ν} = δ_μν * rhs."""
    return [
        Relation(group, f"{a}+{mu}", f"{b}-{nu}", "anticomm", rhs if mu == nu else ())
        for mu in INDICES
        for nu in INDICES
    ]


def _so3(group: str, p: str) -> list:
    return [
        Relation(group, f"{p}3", f"{p}+", "comm", (term(2, f"{p}+"),)),
        Relation(group, f"{p}3", f"{p}-", "comm", (term(-2, f"{p}-"),)),
        Relation(group, f"{p}+", f"{p}-", "comm", (term(1, f"{p}3"),)),
    ]


def _so21(group: str) -> list:
    return [
        Relation(group, "D", "H", "comm", (term(-1j, "H"),)),
        Relation(group, "D", "K", "comm", (term(1j, "K"),)),
        Relation(group, "H", "K", "comm", (term(2j, "D"),)),
    ]


def _commuting(group: str, left: tuple, right: tuple) -> list:
    return [Relation(group, a, b, "comm") for a in left for b in right]


def _ladder_slots(p: str) -> tuple:
    return tuple(f"{p}{s}{mu}" for s in SIGNS for mu in INDICES)


def _triple(p: str) -> tuple:
    return (f"{p}3", f"{p}+", f"{p}-")


# SS(4)

SS4 = AlgebraTable(
    "SS4",
    ("H", *_ladder_slots("Q")),
    tuple(
        _nilpotent("group1", "Q", "Q")
        + _diagonal("group1", "Q", "Q", (term(2, "H"),))
        + _commuting("group2", ("H",), _ladder_slots("Q"))
    ),
)

SO21 = AlgebraTable("SO21", ("H", "D", "K"), tuple(_so21("group1")))

SO3_X = AlgebraTable("SO3_X", _triple("X"), tuple(_so3("group1", "X")))

SO3_Y = AlgebraTable("SO3_Y", _triple("Y"), tuple(_so3("group1", "Y")))


def _conformal_action(group: str) -> list:
    """H, D, K acting on Q and S."""
    rels = []
    for s in SIGNS:
        for mu in INDICES:
            q, sc = f"Q{s}{mu}", f"S{s}{mu}"
            rels += [
                Relation(group, "H", q, "comm"),
                Relation(group, "D", q, "comm", (term(-0.5j, q),)),
                Relation(group, "K", q, "comm", (term(_sgn(s), sc),)),
                Relation(group, "H", sc, "comm", (term(_sgn(s), q),)),
                Relation(group, "D", sc, "comm", (term(0.5j, sc),)),
                Relation(group, "K", sc, "comm"),
            ]
    return rels


def _x_action(group: str, p: str) -> list:
    """X triple on a ladder family: X3 eigenvalue ±(-)^(μ+1), X± moves μ."""
    rels = []
    for s in SIGNS:
        for mu in INDICES:
            eigen = term(_sgn(s) * (-1) ** (mu + 1), f"{p}{s}{mu}")
            rels.append(Relation(group, "X3", f"{p}{s}{mu}", "comm", (eigen,)))
    rels += [
        Relation(group, "X+", f"{p}+1", "comm"),
        Relation(group, "X+", f"{p}+2", "comm", (term(1, f"{p}+1"),)),
        Relation(group, "X-", f"{p}-1", "comm"),
        Relation(group, "X-", f"{p}-2", "comm", (term(-1, f"{p}-1"),)),
        Relation(group, "X+", f"{p}-1", "comm", (term(-1, f"{p}-2"),)),
        Relation(group, "X+", f"{p}-2", "comm"),
        Relation(group, "X-", f"{p}+1", "comm", (term(1, f"{p}+2"),)),
        Relation(group, "X-", f"{p}+2", "comm"),
    ]
    return rels


def _y_action(group: str, p: str, phase: int, partner: str = None) -> list:
    """Y3 lowers the ± charge; Y± maps p±μ to partner∓ν with sign ±phase*(-)^(μ+1)."""
    partner = partner or p
    rels = []
    for s in SIGNS:
        for mu in INDICES:
            slot = f"{p}{s}{mu}"
            rels.append(Relation(group, "Y3", slot, "comm", (term(-_sgn(s), slot),)))
            coeff = _sgn(s) * phase * (-1) ** (mu + 1)
            rels.append(Relation(group, f"Y{s}", slot, "comm", (term(coeff, f"{partner}{_flip(s)}{_other(mu)}"),)))
            rels.append(Relation(group, f"Y{_flip(s)}", slot, "comm"))
    return rels


# SC(4) for W = k/x: internal X triple, k-dependent mixed anticommutators

_SC4_1_MIXED = [
    Relation("group3", "Q+1", "S-1", "anticomm", (term(1, param="k"), term(-1, "X3"), term(2j, "D"))),
    Relation("group3", "Q+2", "S-2", "anticomm", (term(1, param="k"), term(1, "X3"), term(2j, "D"))),
    Relation("group3", "Q+1", "S-2", "anticomm", (term(-2, "X+"),)),
    Relation("group3", "Q+2", "S-1", "anticomm", (term(-2, "X-"),)),
    Relation("group3", "Q-1", "S+1", "anticomm", (term(1, param="k"), term(-1, "X3"), term(-2j, "D"))),
    Relation("group3", "Q-2", "S+2", "anticomm", (term(1, param="k"), term(1, "X3"), term(-2j, "D"))),
    Relation("group3", "Q-1", "S+2", "anticomm", (term(-2, "X-"),)),
    Relation("group3", "Q-2", "S+1", "anticomm", (term(-2, "X+"),)),
]

SC4_1 = AlgebraTable(
    "SC4_1",
    ("H", "D", "K", *_ladder_slots("Q"), *_ladder_slots("S"), *_triple("X")),
    tuple(
        _nilpotent("group1", "Q", "Q")
        + _diagonal("group1", "Q", "Q", (term(2, "H"),))
        + _nilpotent("group2", "S", "S")
        + _diagonal("group2", "S", "S", (term(2, "K"),))
        + _SC4_1_MIXED
        + _nilpotent("group3", "Q", "S")
        + _so21("group4")
        + _so3("group5", "X")
        + _conformal_action("group6")
        + _commuting("group7", ("H", "D", "K"), _triple("X"))
        + _x_action("group8", "Q")
        + _x_action("group8", "S")
    ),
    scalars=("k",),
)


# SC(4) for W = ωx: internal Y triple, no free scalar

_SC4_2_MIXED = (
    [
        Relation("group3", f"Q{s}{mu}", f"S{_flip(s)}{nu}", "anticomm",
                 (term(_sgn(s) * 2j, "D"), term(1, "Y3")) if mu == nu else ())
        for s in SIGNS
        for mu in INDICES
        for nu in INDICES
    ]
    + [
        Relation("group3", f"Q{s}{mu}", f"S{s}{nu}", "anticomm",
                 (term(2 * (-1) ** (mu + 1), f"Y{_flip(s)}"),) if mu != nu else ())
        for s in SIGNS
        for mu in INDICES
        for nu in INDICES
    ]
)

SC4_2 = AlgebraTable(
    "SC4_2",
    ("H", "D", "K", *_ladder_slots("Q"), *_ladder_slots("S"), *_triple("Y")),
    tuple(
        _nilpotent("group1", "Q", "Q")
        + _diagonal("group1", "Q", "Q", (term(2, "H"),))
        + _nilpotent("group2", "S", "S")
        + _diagonal("group2", "S", "S", (term(2, "K"),))
        + _SC4_2_MIXED
        + _so21("group4")
        + _so3("group5", "Y")
        + _conformal_action("group6")
        + _commuting("group7", ("H", "D", "K"), _triple("Y"))
        + _y_action("group8", "Q", 1)
        + _y_action("group8", "S", -1)
    ),
)


# regrouped W = ωx algebra: T triple, L and R supercharges

def _tlr_fermions() -> list:
    rels = (
        _nilpotent("group3", "L", "L")
        + _diagonal("group3", "L", "L", (term(1, "T3"), term(-0.5, "Y3")))
        + _nilpotent("group4", "R", "R")
        + _diagonal("group4", "R", "R", (term(1, "T3"), term(0.5, "Y3")))
    )
    for s in SIGNS:
        for mu in INDICES:
            for nu in INDICES:
                rels.append(Relation("group5", f"L{s}{mu}", f"R{_flip(s)}{nu}", "anticomm",
                                     (term(1, f"T{_flip(s)}"),) if mu == nu else ()))
                rels.append(Relation("group5", f"L{s}{mu}", f"R{s}{nu}", "anticomm",
                                     (term((-1) ** nu, f"Y{_flip(s)}"),) if mu != nu else ()))
    return rels


def _t_action() -> list:
    rels = []
    for s in SIGNS:
        for mu in INDICES:
            ls, rs = f"L{s}{mu}", f"R{s}{mu}"
            rels += [
                Relation("group7", "T3", ls, "comm", (term(-0.5 * _sgn(s), ls),)),
                Relation("group7", "T3", rs, "comm", (term(0.5 * _sgn(s), rs),)),
                Relation("group7", f"T{_flip(s)}", ls, "comm"),
                Relation("group7", f"T{s}", ls, "comm", (term(-_sgn(s), rs),)),
                Relation("group7", f"T{s}", rs, "comm"),
                Relation("group7", f"T{_flip(s)}", rs, "comm", (term(-_sgn(_flip(s)), ls),)),
            ]
    return rels


TLR = AlgebraTable(
    "TLR",
    (*_triple("T"), *_triple("Y"), *_ladder_slots("L"), *_ladder_slots("R")),
    tuple(
        [
            Relation("group1", "T3", "T+", "comm", (term(1, "T+"),)),
            Relation("group1", "T3", "T-", "comm", (term(-1, "T-"),)),
            Relation("group1", "T+", "T-", "comm", (term(-2, "T3"),)),
        ]
        + _so3("group2", "Y")
        + _tlr_fermions()
        + _commuting("group6", _triple("T"), _triple("Y"))
        + _t_action()
        + _y_action("group8", "L", 1, partner="R")
        + _y_action("group8", "R", 1, partner="L")
    ),
)

TABLES = {
    "ss4": SS4,
    "so21": SO21,
    "so3": SO3_X,
    "so3-y": SO3_Y,
    "sc4-1": SC4_1,
    "sc4-2": SC4_2,
    "tlr": TLR,
}


def get_table(name: str) -> AlgebraTable:
    try:
        return TABLES[name]
    except KeyError:
        raise ValueError(f"Algebra {name} is not supported.") from None
