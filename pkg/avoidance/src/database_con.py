from contextlib import contextmanager
from pathlib import Path
from typing import Generator

from sqlmodel import Session, SQLModel, create_engine
from src.config_settings import GOLDEN_DATABASE_URL

# Ensure golden directory exists for SQLite
if GOLDEN_DATABASE_URL.startswith("sqlite:///"):
    db_path = GOLDEN_DATABASE_URL.replace("sqlite:///", "")
    Path(db_path).parent.mkdir(parents=True, exist_ok=True)

engine = create_engine(GOLDEN_DATABASE_URL)


def create_tables() -> None:
    SQLModel.metadata.create_all(engine)


@contextmanager
def get_session() -> Generator[Session, None, None]:
    session = Session(engine)
    try:
        yield session
    except Exception as e:
        session.rollback()
        raise e
    else:  # pragma: no cover
        session.commit()
    finally:
        session.close()
