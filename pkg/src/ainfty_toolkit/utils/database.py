from typing import Iterator, Optional

from sqlalchemy.engine import Engine
from sqlmodel import Session, SQLModel, create_engine

from ainfty_toolkit.utils.settings import load_settings

_engine: Optional[Engine] = None


def get_engine(url: Optional[str] = None) -> Engine:
    """The run-history engine; ``DATABASE_URL`` (or the defaults file) names the database."""
    global _engine
    if url is not None:
        return create_engine(url)
    if _engine is None:
        _engine = create_engine(load_settings().database_url)
    return _engine


def init_db(engine: Optional[Engine] = None):
    SQLModel.metadata.create_all(engine or get_engine())


def get_session(engine: Optional[Engine] = None) -> Iterator[Session]:
    with Session(engine or get_engine()) as session:
        yield session
