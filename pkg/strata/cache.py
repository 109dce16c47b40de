# IMPORTS
import os
import json
import hashlib
import logging as lgg


# LOGGER
logger = lgg.getLogger(__name__)
logger.setLevel(lgg.DEBUG)


# GLOBAL VARIABLES
CACHE_FORMAT = 1


# CLASSES
class ReportCache:
    """Directory of json files with results keyed by content hash of the
    input text, run parameters and library version.

    Entries that can not be read are reported with a warning and treated as
    missing, so the result is computed again and the entry overwritten.

    Parameters
    ----------
    path : str
        Cache directory, created if needed.
    version : str
        Library version included in every key."""

    def __init__(self, path, version=''):
        self.path = path
        self.version = version
        self.hits = 0
        self.misses = 0

    @property
    def path(self):
        return self._path

    @path.setter
    def path(self, value):
        value = os.path.normpath(value)
        os.makedirs(value, exist_ok=True)
        self._path = value

    def key(self, text, parameters, name):
        """Hex digest identifying entry of given name for given input."""
        digest = hashlib.sha256()
        digest.update(text.encode('utf-8'))
        digest.update(json.dumps(parameters, sort_keys=True).encode('utf-8'))
        digest.update(f'{self.version}:{CACHE_FORMAT}:{name}'.encode('utf-8'))
        return digest.hexdigest()

    def file(self, key):
        return os.path.join(self.path, f'{key}.json')

    def load(self, key):
        """Stored payload or None if entry is missing or corrupted."""
        file = self.file(key)
        if not os.path.isfile(file):
            self.misses += 1
            return None
        try:
            with open(file, 'r', encoding='utf-8') as handle:
                entry = json.load(handle)
            if entry.get('key') != key or 'payload' not in entry:
                raise ValueError('entry does not match its key')
        except (OSError, ValueError) as error:
            logger.warning(f"Ignoring corrupted cache entry {file}: {error}")
            self.misses += 1
            return None
        self.hits += 1
        logger.debug(f"Cache hit: {file}")
        return entry['payload']

    def store(self, key, payload):
        file = self.file(key)
        entry = {'key': key, 'version': self.version, 'payload': payload}
        with open(file, 'w', encoding='utf-8') as handle:
            json.dump(entry, handle, sort_keys=True)
        logger.debug(f"Cache entry stored: {file}")

    @property
    def note(self):
        if not self.hits and not self.misses:
            return 'unused'
        return 'hit' if not self.misses else \
            'miss' if not self.hits else 'partial'
