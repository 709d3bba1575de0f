from rosi.errors import QueryError


class UrmError(QueryError):
    """Raised when universal-relation inference cannot answer a FROM-less query."""


class UnknownAttribute(UrmError):
    """A queried attribute is not in the attribute universe."""


class NoConnection(UrmError):
    """No connected set of relations covers the queried attributes."""


class CatalogTooLargeForInference(UrmError):
    """Cover enumeration is exponential and is refused beyond a fixed number of relations."""
