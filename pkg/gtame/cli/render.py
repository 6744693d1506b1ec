"""Output of CLI documents: JSON in machine mode, indented text otherwise."""

from __future__ import annotations

import sys
from collections.abc import Iterator
from typing import Any, TextIO

from prompt_toolkit import print_formatted_text
from prompt_toolkit.formatted_text import HTML
from prompt_toolkit.styles import Style
from pydantic import BaseModel

STYLE = Style.from_dict(
    {
        "key": "#00aa00 bold",
        "exact": "#ffffff",
        "whp": "#aaaa00",
        "exhausted": "#888888 italic",
        "flag": "#ff5555 bold",
    }
)

_TAGS = {"exact": "exact", "upper-bound-whp": "whp", "bounded-exhausted": "exhausted"}

# Boolean fields that read as a problem when true.
_ALARMS = {"low_confidence", "ambiguous", "exceeds_bound"}


def _is_quantity(value: Any) -> bool:
    return isinstance(value, dict) and set(value) == {"value", "semantics"}


def _scalar(value: Any) -> str:
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return "(" + ", ".join(str(v) for v in value) + ")"
    if isinstance(value, list) and all(isinstance(v, list) for v in value):
        return "[" + "; ".join(_scalar(v) for v in value) + "]"
    return str(value)


def _lines(data: dict[str, Any], indent: int = 0) -> Iterator[tuple[int, str, Any]]:
    for key, value in data.items():
        if value is None:
            continue
        if isinstance(value, dict) and not _is_quantity(value):
            yield indent, key, None
            yield from _lines(value, indent + 1)
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            yield indent, key, None
            for k, item in enumerate(value, start=1):
                yield indent + 1, f"#{k}", None
                yield from _lines(item, indent + 2)
        else:
            yield indent, key, value


def to_text(document: BaseModel) -> str:
    out = []
    for indent, key, value in _lines(document.model_dump(mode="json")):
        pad = "  " * indent
        if value is None:
            out.append(f"{pad}{key}:")
        elif _is_quantity(value):
            out.append(f"{pad}{key}: {_scalar(value['value'])}  [{value['semantics']}]")
        else:
            out.append(f"{pad}{key}: {_scalar(value)}")
    return "\n".join(out)


def _styled(document: BaseModel) -> None:
    for indent, key, value in _lines(document.model_dump(mode="json")):
        pad = "  " * indent
        if value is None:
            print_formatted_text(HTML("{}<key>{}:</key>").format(pad, key), style=STYLE)
        elif _is_quantity(value):
            tag = _TAGS[value["semantics"]]
            print_formatted_text(
                HTML("{}<key>{}:</key> <" + tag + ">{}</" + tag + ">  [{}]").format(
                    pad, key, _scalar(value["value"]), value["semantics"]
                ),
                style=STYLE,
            )
        elif key in _ALARMS and value is True:
            print_formatted_text(HTML("{}<key>{}:</key> <flag>{}</flag>").format(pad, key, value), style=STYLE)
        else:
            print_formatted_text(HTML("{}<key>{}:</key> {}").format(pad, key, _scalar(value)), style=STYLE)


def emit(document: BaseModel, machine: bool, stream: TextIO | None = None) -> None:
    """Write one document to standard output."""
    stream = stream or sys.stdout
    if machine:
        stream.write(document.model_dump_json(indent=2) + "\n")
    elif stream.isatty():
        _styled(document)
    else:
        stream.write(to_text(document) + "\n")
    stream.flush()
