"""The claims ledger: source claims mapped to experiments and verdicts.

The ledger ships as a versioned JSON document in the repository.  Test
and experiment runs never rewrite it implicitly; verdicts change only
when an update is explicitly requested (the CLI's --update-ledger).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional

from .errors import UsageError

LEDGER_VERSION = 1

VERDICTS = ("pending", "confirmed", "refuted", "not-testable-at-desk-scale")

DEFAULT_LEDGER_PATH = Path(__file__).resolve().parents[2] / "claims_ledger.json"


@dataclass
class ClaimsLedgerEntry:
    claim_id: str
    source: str  # section of the source text the claim comes from
    quote: str  # short verbatim phrasing of the claim
    experiment: str  # CLI invocation that measures it
    verdict: str
    evidence: str  # pointer to the artifact or measurement backing the verdict


def load_ledger(path: Optional[Path] = None) -> List[ClaimsLedgerEntry]:
    path = Path(path or DEFAULT_LEDGER_PATH)
    doc = json.loads(path.read_text())
    if doc.get("ledger_version") != LEDGER_VERSION:
        raise UsageError(f"unsupported ledger version {doc.get('ledger_version')!r}")
    return [ClaimsLedgerEntry(**e) for e in doc["claims"]]


def save_ledger(entries: List[ClaimsLedgerEntry], path: Optional[Path] = None) -> None:
    path = Path(path or DEFAULT_LEDGER_PATH)
    doc = {
        "ledger_version": LEDGER_VERSION,
        "claims": [asdict(e) for e in entries],
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def update_verdict(
    claim_id: str,
    verdict: str,
    evidence: str,
    path: Optional[Path] = None,
) -> ClaimsLedgerEntry:
    """Set the verdict for one claim and persist the ledger."""
    if verdict not in VERDICTS:
        raise UsageError(f"verdict must be one of {VERDICTS}")
    entries = load_ledger(path)
    for entry in entries:
        if entry.claim_id == claim_id:
            entry.verdict = verdict
            entry.evidence = evidence
            save_ledger(entries, path)
            return entry
    raise UsageError(f"no ledger entry with id {claim_id!r}")


def get_entry(claim_id: str, path: Optional[Path] = None) -> ClaimsLedgerEntry:
    for entry in load_ledger(path):
        if entry.claim_id == claim_id:
            return entry
    raise UsageError(f"no ledger entry with id {claim_id!r}")
