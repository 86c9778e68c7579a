import json
from datetime import datetime, timezone
from typing import Dict, List, Optional, Tuple

from sqlmodel import Field, Session, SQLModel, desc, select

from ainfty_toolkit.errors import UsageError
from ainfty_toolkit.utils.database import get_session, init_db
from ainfty_toolkit.utils.reports import Report, to_json


class RunRecord(SQLModel, table=True):
    id: Optional[int] = Field(default=None, primary_key=True)
    verb: str = Field(index=True)
    inputs: str
    options: str
    passed: bool
    exit_code: int
    report: str
    created_at: Optional[datetime] = Field(
        default_factory=lambda: datetime.now(timezone.utc),
        nullable=False
    )

#=============================
# Router endpoints
#=============================

def register(subparsers, parents):
    parser = subparsers.add_parser("reports", parents=parents, help="list stored runs or show one stored report")
    parser.add_argument("--verb", dest="filter_verb", default=None, help="only runs of this verb")
    parser.add_argument("--id", dest="run_id", type=int, default=None, help="show the stored report with this id")
    parser.set_defaults(handler=handle_reports)


def handle_reports(args, options) -> Tuple[bool, Dict]:
    init_db()
    session = next(get_session())
    try:
        if args.run_id is not None:
            record = fetch_run_by_id(session, args.run_id)
            return True, {"run": summary(record), "report": json.loads(record.report)}
        return True, {"runs": [summary(r) for r in fetch_runs(session, args.filter_verb)]}
    finally:
        session.close()

#=============================
# Service functions
#=============================

def summary(record: RunRecord) -> Dict:
    return {
        "id": record.id,
        "verb": record.verb,
        "inputs": record.inputs,
        "passed": record.passed,
        "exit_code": record.exit_code,
        "created_at": record.created_at.isoformat() if record.created_at else None,
    }


def store_run(session: Session, inputs: List[str], report: Report) -> RunRecord:
    """
    Persist one finished run.
    """
    record = RunRecord(
        verb=report.verb,
        inputs=" ".join(inputs),
        options=json.dumps(report.options, sort_keys=True, default=str),
        passed=report.passed,
        exit_code=report.exit_code,
        report=to_json(report),
    )
    session.add(record)
    session.commit()
    session.refresh(record)
    return record


def fetch_runs(session: Session, verb: Optional[str] = None) -> List[RunRecord]:
    """
    Stored runs, newest first, optionally for one verb.
    """
    query = select(RunRecord)
    if verb:
        query = query.where(RunRecord.verb == verb)
    return list(session.exec(query.order_by(desc(RunRecord.created_at), desc(RunRecord.id))).all())


def fetch_run_by_id(session: Session, run_id: int) -> RunRecord:
    record = session.get(RunRecord, run_id)
    if not record:
        raise UsageError(f"no stored run with id {run_id}")
    return record
