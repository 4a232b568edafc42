from fractions import Fraction

from aiida.common.log import AIIDA_LOGGER

LOGGER = AIIDA_LOGGER.getChild("susyqm")


def get_logger(name: str):
    return LOGGER.getChild(name)


def as_fraction(value) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float.

    Floats go through their shortest repr, so 2.7 becomes 27/10 rather than
    the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value {value}")
        return Fraction(repr(value))
    # numpy scalars
    if hasattr(value, "item"):
        return as_fraction(value.item())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")
