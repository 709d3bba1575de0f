from typing import Protocol

from rosi.catalog.types import RelationSchema
from rosi.providers.types import Relation
from rosi.reporting.types import DiagnosticSink
from rosi.sql.ast import Expr


class RelationProvider(Protocol):
    """
    Produces point-in-time snapshots of one relation.

    Contract:
    - Stateless between calls; safe to call concurrently.
    - `hint` is a pushed-down predicate the provider MAY use to prune work.
      Providers never filter by it themselves: the provider set post-filters
      every snapshot, so pruning only has to be sound (never drop a match).
    - Raises ProviderUnavailable when the OS facility does not exist.
    """

    @property
    def schema(self) -> RelationSchema:
        raise NotImplementedError()

    def snapshot(self, hint: Expr | None, sink: DiagnosticSink) -> Relation:
        raise NotImplementedError()
