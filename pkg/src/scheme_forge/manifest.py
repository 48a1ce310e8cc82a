"""Run manifests: enough to replay a command and compare its outputs byte for byte."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from .errors import ConventionMismatch
from .field import make_field
from .primes import prime_power
from .tatra import ORDERING_CONVENTION

VERSION = "0.1.0"


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def modulus_for(params: dict) -> str | None:
    """Modulus polynomial of the field a command builds, if any."""
    if params.get("q") is not None:
        rd = prime_power(int(params["q"]))
        if rd is None:
            return None
        return make_field(*rd).modulus_str()
    if params.get("singer"):
        r, d = params["singer"]
        return make_field(int(r), int(d)).modulus_str()
    return None


@dataclass
class RunManifest:
    command: list[str]
    params: dict
    version: str = VERSION
    modulus: str | None = None
    ordering: str = ORDERING_CONVENTION
    outputs: dict[str, str] = field(default_factory=dict)
    exit_code: int = 0
    timestamp: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))

    def comparable(self) -> dict:
        """Everything except the timestamp."""
        d = asdict(self)
        d.pop("timestamp")
        return d


def make_manifest(command, params, outputs, exit_code) -> RunManifest:
    return RunManifest(
        command=list(command),
        params=dict(params),
        modulus=modulus_for(params),
        outputs=dict(outputs),
        exit_code=exit_code,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def check_conventions(m: RunManifest) -> None:
    if m.ordering != ORDERING_CONVENTION:
        raise ConventionMismatch(f"manifest ordering {m.ordering!r}, this build uses {ORDERING_CONVENTION!r}")
    current = modulus_for(m.params)
    if m.modulus != current:
        raise ConventionMismatch(f"manifest modulus {m.modulus!r}, this build uses {current!r}")
