# IMPORTS
import os
import logging as lgg

from .. import linalg as la
from . import quiver_parser
from . import path_algebra


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
FIXTURES_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures'
)
EXTENSION = '.qar'


# CLASSES
class QuiverLoader:
    """A tool for reading algebra presentations from files in specific
    directory. Typical use:

    >>> loader = QuiverLoader()
    >>> algebra = loader.algebra('MP4')

    Names without directory part are looked up first as given, then in
    the bound directory, with and without the '.qar' extension; if
    directory was not given, shipped fixtures directory is used.

    Attributes
    ----------
    path : str
        Path of directory bound to QuiverLoader instance.
    min_prime : int
        Smallest characteristic accepted in presentation files.
    degree_cap : int or None
        Longest path allowed when building algebras."""

    def __init__(self, path=None, min_prime=la.DEFAULT_PRIME,
                 degree_cap=None):
        """
        Raises
        ------
        FileNotFoundError
            If path passed as argument to constructor doesn't exist."""
        self.path = path
        self.min_prime = min_prime
        self.degree_cap = degree_cap
        self.parser = quiver_parser

    @property
    def path(self):
        return self._path

    @path.setter
    def path(self, value):
        if value is None:
            self._path = FIXTURES_DIR
        elif not os.path.isdir(value):
            raise FileNotFoundError(f"Path not found: {value}")
        else:
            self._path = value

    @property
    def files(self):
        return sorted(os.listdir(self.path))

    @property
    def presentation_files(self):
        """Sorted list of *.qar files in bound directory."""
        return [f for f in self.files if f.endswith(EXTENSION)]

    def resolve(self, name):
        """Path of presentation file given by path or by fixture name.

        Raises
        ------
        FileNotFoundError
            If no matching file exists."""
        candidates = [name, os.path.join(self.path, name)]
        if not name.endswith(EXTENSION):
            candidates += [name + EXTENSION,
                           os.path.join(self.path, name + EXTENSION)]
        for candidate in candidates:
            if os.path.isfile(candidate):
                return candidate
        raise FileNotFoundError(f"Cannot find such file: '{name}'.")

    def read(self, name):
        with open(self.resolve(name), 'r', encoding='utf-8') as handle:
            return handle.read()

    def presentation(self, name):
        """Parsed quiver presentation from file."""
        path = self.resolve(name)
        logger.debug(f'Reading presentation from file: {path}')
        with open(path, 'r', encoding='utf-8') as handle:
            return self.parser.parse(handle.read(), min_prime=self.min_prime)

    def algebra(self, name, order=None):
        """Algebra given by presentation file, optionally with other order
        of vertices than declared in file."""
        presentation = self.presentation(name)
        if order is not None:
            presentation = presentation.with_order([str(v) for v in order])
        return path_algebra.build_algebra(
            presentation, degree_cap=self.degree_cap
        )

    def extract(self):
        """Reads every presentation file in bound directory. Implemented as
        generator.

        Yields
        ------
        tuple
            Name of parsed file and its QuiverPresentation."""
        for file in self.presentation_files:
            yield file, self.presentation(os.path.join(self.path, file))
