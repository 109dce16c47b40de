from .extraction import QuiverLoader, FIXTURES_DIR, logger
from .quiver_parser import (
    QuiverPresentation, Arrow, Relation, parse, load
)
from .path_algebra import build_algebra, evaluate_word, default_degree_cap
