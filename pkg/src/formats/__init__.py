"""
File formats for series, dictionaries, profiles, labels and result tables.
"""

from .series_file import read_series, write_series
from .dictionary_file import (
    FORMAT_VERSION,
    dictionary_to_document,
    document_to_dictionary,
    read_dictionary,
    write_dictionary
)
from .profile_file import profile_to_frame, read_profile, write_profile
from .label_file import read_labels, write_labels
from .tables import write_table

__all__ = [
    "read_series",
    "write_series",
    "FORMAT_VERSION",
    "dictionary_to_document",
    "document_to_dictionary",
    "read_dictionary",
    "write_dictionary",
    "profile_to_frame",
    "read_profile",
    "write_profile",
    "read_labels",
    "write_labels",
    "write_table"
]
