"""
rosi
====

A read-only relational lens over a running operating system.

OS state (users, processes, files, open files, I/O activity) is exposed as
virtual relations and queried with a small SQL subset. Queries that omit FROM
are answered through the universal relation: the system infers the join paths
connecting the named attributes.

Typical flow:
    engine = QueryEngine.open(EngineConfig())
    result = engine.run("SELECT username, command WHERE state = 'R'")
"""

__version__ = "0.1.0"
