from .Evaluation import EvalWorkChainCheck
from .Extractors import BasicExtractor
from .SuiteBuilder import SuiteBuilder
from .utils import as_fraction, get_logger

__all__ = [
    "EvalWorkChainCheck",
    "SuiteBuilder",
    "BasicExtractor",
    "as_fraction",
    "get_logger",
]
