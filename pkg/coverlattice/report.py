"""This file includes the report the command-line tool prints."""

import json
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional

from coverlattice.utils import Bcolors, msg_with_color


@dataclass
class Report:
    """Every field is optional; each subcommand fills its own fragment.

    The field order below is the order of the JSON keys.
    """

    command: Optional[str] = None
    n: Optional[int] = None
    input_edges: Optional[List[List[int]]] = None
    relabeling: Optional[List[int]] = None
    bipartite: Optional[bool] = None
    unmixed: Optional[bool] = None
    unmixed_bruteforce: Optional[bool] = None
    cohen_macaulay: Optional[bool] = None
    knn: Optional[bool] = None
    lattice: Optional[Dict[str, Any]] = None
    rank: Optional[int] = None
    maximal_chains: Optional[int] = None
    cm_reduction: Optional[List[int]] = None
    nu: Optional[List[List[List[int]]]] = None
    f_vector: Optional[List[int]] = None
    basic_h_vector: Optional[List[int]] = None
    h: Optional[List[int]] = None
    denom_power: Optional[int] = None
    multiplicity: Optional[int] = None
    bounds: Optional[List[int]] = None
    gorenstein_symmetric: Optional[bool] = None
    a_invariant: Optional[int] = None
    u_order: Optional[List[str]] = None
    basis: Optional[List[Dict[str, Dict[str, int]]]] = None
    verification: Optional[List[Dict[str, str]]] = None
    # Preformatted text printed after the fields; never serialized.
    text_body: Optional[str] = field(
        default=None, compare=False, metadata={"serialize": False}
    )

    def to_dict(self):
        out = {}
        for f in fields(self):
            if not f.metadata.get("serialize", True):
                continue
            value = getattr(self, f.name)
            if value is not None:
                out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(
                "Unknown report fields: {}".format(", ".join(sorted(unknown)))
            )
        return cls(**data)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @property
    def failed_checks(self):
        return [
            c["name"] for c in self.verification or [] if c["status"] == "fail"
        ]

    def to_text(self):
        lines = []
        for key, value in self.to_dict().items():
            if key in ("command", "verification", "basis", "u_order"):
                continue
            lines.append("{}: {}".format(key, _text_value(value)))
        for check in self.verification or []:
            color = {
                "pass": Bcolors.OKGREEN,
                "fail": Bcolors.FAIL,
                "skip": Bcolors.WARNING,
            }[check["status"]]
            line = "[{}] {}".format(
                msg_with_color(check["status"].upper(), color), check["name"]
            )
            if check["detail"] and check["status"] != "pass":
                line += ": {}".format(check["detail"])
            lines.append(line)
        return "\n".join(lines)


def _text_value(value):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return json.dumps(value)
    return str(value)
