from .closure import AlgebraTable, ClosureReport, Relation, RhsTerm, term, verify_closure
from .tables import SC4_1, SC4_2, SO3_X, SO3_Y, SO21, SS4, TABLES, TLR, get_table

__all__ = [
    "SC4_1",
    "SC4_2",
    "SO3_X",
    "SO3_Y",
    "SO21",
    "SS4",
    "TABLES",
    "TLR",
    "AlgebraTable",
    "ClosureReport",
    "Relation",
    "RhsTerm",
    "get_table",
    "term",
    "verify_closure",
]
