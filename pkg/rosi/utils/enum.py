from enum import Enum
from typing import TypeVar

_E = TypeVar("_E", bound="StrEnum")


class StrEnum(str, Enum):

    @staticmethod
    def _generate_next_value_(name: str, start: int, count: int, last_values: list) -> str:
        return name.lower()

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_str(cls: type[_E], value: str) -> _E:
        """
        Parse a member from its value or name (case-insensitive).

        Raises:
            ValueError if no member matches.
        """
        needle = value.strip().lower()
        for member in cls:
            if member.value.lower() == needle or member.name.lower() == needle:
                return member
        choices = ", ".join(m.value for m in cls)
        raise ValueError(f"Invalid {cls.__name__}: {value!r} (expected one of: {choices})")
