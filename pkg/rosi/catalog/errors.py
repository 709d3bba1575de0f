from rosi.errors import QueryError, RosiError


class CatalogError(RosiError):
    """Raised when a schema or maximal object cannot be registered."""


class InvalidSchema(CatalogError):
    """A relation schema violates its own invariants."""


class DuplicateRelation(CatalogError):
    """A relation with the same name is already registered."""


class AttributeTypeConflict(CatalogError):
    """
    An attribute name is already registered under a different type.

    One attribute name carries exactly one meaning and one type across the whole catalog.
    """


class UnknownRelation(CatalogError, QueryError):
    """A relation name is not present in the catalog."""


class DisconnectedMembers(CatalogError):
    """Maximal object members are not linked through shared attributes."""


class DuplicateObjectName(CatalogError):
    """A maximal object with the same name is already registered."""
