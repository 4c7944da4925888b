"""
The :mod:`coboson.base` module provides the abstract base class for
the immutable records that coboson computes and serializes.
"""

# License: MIT

from abc import ABC, abstractmethod

from coboson.utils._io import _csv_dump, _json_dump


class AbstractRecord(ABC):
    """Abstract base class for serializable results.

    Notes
    -----
    Every record is immutable after construction. The JSON
    representation comes from ``to_dict`` and the CSV
    representation from ``to_frame``.
    """

    @abstractmethod
    def to_dict(self) -> dict:
        """Represents the record as a flat JSON-ready dictionary."""

    @abstractmethod
    def to_frame(self):
        """Represents the record as a pandas DataFrame."""

    def to_json(self, filename: str) -> None:
        """Serializes the record as a JSON formatted stream."""

        _json_dump(record=self.to_dict(), filename=filename)

    def to_csv(self, filename: str) -> None:
        """Writes the tabular representation with a header row."""

        _csv_dump(df=self.to_frame(), filename=filename)

    def __setattr__(self, name, value):
        if getattr(self, '_frozen', False):
            raise AttributeError('%s is immutable, so %s cannot be set.'
                                 % (type(self).__name__, name))
        super().__setattr__(name, value)

    def _freeze(self) -> None:
        self._frozen = True
