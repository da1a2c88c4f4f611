import logging
import re

from core.errors import TokenError
from complexes.simplicial import build

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^[A-Za-z0-9_]+$")
_DIRECTIVE = "# vertices:"


def parse_facets(text):
    """
    One facet per line, whitespace-separated vertex tokens.
    '#' starts a comment; a '# vertices: ...' comment fixes the vertex order.
    """
    facets = []
    vertex_order = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith(_DIRECTIVE):
            vertex_order = stripped[len(_DIRECTIVE):].split()
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        for token in tokens:
            if not _TOKEN.match(token):
                raise TokenError(f"line {lineno}: bad vertex token {token!r}")
        facets.append(tokens)

    return build(facets, vertex_order=vertex_order)


def read_facet_file(path):
    with open(path, "r") as f:
        complex_ = parse_facets(f.read())
    logger.debug("Read %s from %s", complex_, path)
    return complex_


def serialize(complex_, header=None):
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    lines.append(f"{_DIRECTIVE} {' '.join(complex_.labels)}")
    lines.extend(" ".join(tokens) for tokens in complex_.facet_tokens())
    return "\n".join(lines) + "\n"


def write_facet_file(path, complex_, header=None):
    with open(path, "w") as f:
        f.write(serialize(complex_, header=header))
