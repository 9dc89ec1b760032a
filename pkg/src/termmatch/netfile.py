"""Save and load a built :class:`ManyToOneMatcher`.

Layout: the magic bytes ``TMNET1``, then two blocks, each a big-endian
``uint32`` length followed by UTF-8 JSON: first the state table, then the
pattern table (signature declarations plus pattern and constraint source
text). Constraints must have been parsed from text to be saved.
"""
from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Optional

from .constraint_lang import parse_constraint
from .errors import NetFormatError
from .many_to_one import (
    CommutativeSubMatcher,
    Label,
    ManyToOneMatcher,
    State,
    _SubpatternTable,
    split_commutative_arguments,
)
from .syntax import format_signature_file, format_term, parse_signature_file, parse_term
from .terms import Application, Pattern, Registry, Symbol, preorder

MAGIC = b"TMNET1"


def _dump_net(net: ManyToOneMatcher) -> dict:
    states = []
    for state in net.states:
        hooks = []
        for sig_name, hook in state.hooks.items():
            hooks.append({
                "sig": sig_name,
                "subpatterns": [format_term(t) for t in hook.subpatterns],
                "targets": sorted([sid, target.index] for sid, target in hook.targets.items()),
                "inner": _dump_net(hook.inner),
            })
        states.append({
            "sym": {k: v.index for k, v in state.symbols.items()},
            "start": {k: v.index for k, v in state.starts.items()},
            "end": None if state.end is None else state.end.index,
            "vars": [[l.kind, l.name, l.extra, t.index] for l, t in state.variables.items()],
            "hooks": hooks,
            "final": list(state.patterns),
        })
    return {"states": states, "nodes": [format_term(p.expression) for p in net.patterns]}


def _collect_registry(net: ManyToOneMatcher, registry: Optional[Registry]) -> Registry:
    result = Registry()
    if registry is not None:
        result.class_parents.update(registry.class_parents)
        result.signatures.update(registry.signatures)
        result.symbols.update(registry.symbols)
    for pattern in net.patterns:
        for t in preorder(pattern.expression):
            if isinstance(t, Application):
                result.add_signature(t.signature)
            elif isinstance(t, Symbol) and (t.class_tag or t.properties) and t.name not in result.symbols:
                result.add_symbol(t.name, t.class_tag, t.properties)
    return result


def save(net: ManyToOneMatcher, path, registry: Optional[Registry] = None) -> None:
    patterns = []
    for p in net.patterns:
        sources = []
        for c in p.constraints:
            if c.source is None:
                raise NetFormatError("only constraints parsed from text can be saved")
            sources.append(c.source)
        patterns.append({"expression": format_term(p.expression), "constraints": sources})
    table = {
        "version": 1,
        "signatures": format_signature_file(_collect_registry(net, registry)),
        "patterns": patterns,
    }
    blocks = [json.dumps(_dump_net(net)).encode(), json.dumps(table).encode()]
    with open(Path(path), "wb") as fh:
        fh.write(MAGIC)
        for block in blocks:
            fh.write(struct.pack(">I", len(block)))
            fh.write(block)


def _read_blocks(data: bytes):
    if not data.startswith(MAGIC):
        raise NetFormatError("not a matcher file (bad magic or version)")
    pos = len(MAGIC)
    blocks = []
    for _ in range(2):
        if pos + 4 > len(data):
            raise NetFormatError("truncated matcher file")
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        pos += 4
        if pos + length > len(data):
            raise NetFormatError("truncated matcher file")
        try:
            blocks.append(json.loads(data[pos:pos + length].decode()))
        except ValueError as exc:
            raise NetFormatError(f"corrupt block: {exc}") from None
        pos += length
    if pos != len(data):
        raise NetFormatError("trailing bytes after pattern table")
    return blocks


def _load_net(dump: dict, patterns, registry: Registry) -> ManyToOneMatcher:
    net = ManyToOneMatcher()
    net.patterns = list(patterns)
    count = len(dump["states"])
    net.states = [State(i) for i in range(count)]

    def ref(index):
        if not isinstance(index, int) or not 0 <= index < count:
            raise NetFormatError(f"state reference {index!r} out of range")
        return net.states[index]

    for state, entry in zip(net.states, dump["states"]):
        state.symbols = {k: ref(v) for k, v in entry["sym"].items()}
        state.starts = {k: ref(v) for k, v in entry["start"].items()}
        state.end = None if entry["end"] is None else ref(entry["end"])
        state.variables = {Label(kind, name, extra): ref(t) for kind, name, extra, t in entry["vars"]}
        for pid in entry["final"]:
            if not 0 <= pid < len(net.patterns):
                raise NetFormatError(f"final state names unknown pattern {pid}")
        state.patterns = list(entry["final"])
        for hook_entry in entry["hooks"]:
            sig = registry.signatures.get(hook_entry["sig"])
            if sig is None or not sig.commutative:
                raise NetFormatError(f"hook for unknown commutative operation {hook_entry['sig']!r}")
            nodes = [parse_term(t, registry) for t in hook_entry["inner"]["nodes"]]
            hook = CommutativeSubMatcher(sig)
            hook.inner = _load_net(hook_entry["inner"], [Pattern(n) for n in nodes], registry)
            hook.node_ids = {n: i for i, n in enumerate(nodes)}
            for text in hook_entry["subpatterns"]:
                term = parse_term(text, registry)
                if not isinstance(term, Application) or term.signature != sig:
                    raise NetFormatError(f"subpattern {text!r} does not belong to {sig.name}")
                node_terms, seq_vars = split_commutative_arguments(term)
                try:
                    ids = tuple(hook.node_ids[n] for n in node_terms)
                except KeyError:
                    raise NetFormatError(f"subpattern {text!r} has nodes missing from its inner net") from None
                hook.index[term] = len(hook.subpatterns)
                hook.subpatterns.append(term)
                hook.tables.append(_SubpatternTable(node_terms, ids, seq_vars))
            for sid, target in hook_entry["targets"]:
                if not 0 <= sid < len(hook.subpatterns):
                    raise NetFormatError(f"hook target for unknown subpattern {sid}")
                hook.targets[sid] = ref(target)
            state.hooks[sig.name] = hook
    return net


def load(path):
    """Return ``(matcher, registry)`` read from ``path``."""
    state_table, pattern_table = _read_blocks(Path(path).read_bytes())
    if pattern_table.get("version") != 1:
        raise NetFormatError(f"unsupported version {pattern_table.get('version')!r}")
    try:
        registry = parse_signature_file(pattern_table["signatures"])
        patterns = [
            Pattern(parse_term(p["expression"], registry), *map(parse_constraint, p["constraints"]))
            for p in pattern_table["patterns"]
        ]
        return _load_net(state_table, patterns, registry), registry
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, NetFormatError):
            raise
        raise NetFormatError(f"invalid matcher file: {exc}") from None
