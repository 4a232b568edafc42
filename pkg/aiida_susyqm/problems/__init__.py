from .checks import CliffordCheck, ClosureCheck, SpectrumCheck, SS4Check, ZeroModeCheck

__all__ = ["CliffordCheck", "ClosureCheck", "SpectrumCheck", "SS4Check", "ZeroModeCheck"]
