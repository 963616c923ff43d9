"""Curator comments on KG entities, persisted in an append-only journal.

The comment tracker is the one mutable part of the system and it never
touches the KG itself. Every create/status change is appended as one
JSON line and fsynced before the call returns; startup replays the
journal into memory. A comment acknowledged to a caller therefore
survives any crash, and replaying a journal is deterministic and
idempotent. ``compact`` rewrites the journal to one record per live
comment (atomic rename), for installations where journals grow long.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass, replace
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Container, Optional, Union

from .model import EntityId
from .timefmt import parse_iso, to_iso, utc_now

logger = logging.getLogger(__name__)

MAX_TEXT_LENGTH = 10_000


class CommentType(str, Enum):
    INACCURATE = "inaccurate"
    INCOMPLETE = "incomplete"
    DUPLICATE = "duplicate"
    QUESTION = "question"
    OTHER = "other"


class CommentStatus(str, Enum):
    OPEN = "open"
    RESOLVED = "resolved"


class CommentError(Exception):
    pass


class UnknownTarget(CommentError):
    def __init__(self, target: EntityId):
        super().__init__(f"target {target!r} does not resolve in the current snapshot")
        self.target = target


class EmptyText(CommentError):
    pass


class TextTooLong(CommentError):
    pass


class EmptyAuthor(CommentError):
    pass


class UnknownComment(CommentError):
    def __init__(self, comment_id: int):
        super().__init__(f"no comment with id {comment_id}")
        self.comment_id = comment_id


class CorruptJournal(CommentError):
    pass


@dataclass(frozen=True)
class Comment:
    id: int
    target: EntityId
    comment_type: CommentType
    text: str
    author: str
    created_at: datetime
    status: CommentStatus


def _comment_from_record(record: dict, line_number: int) -> Comment:
    try:
        return Comment(
            id=int(record["id"]),
            target=record["target"],
            comment_type=CommentType(record["type"]),
            text=record["text"],
            author=record["author"],
            created_at=parse_iso(record["created_at"]),
            status=CommentStatus(record.get("status", "open")),
        )
    except (KeyError, ValueError) as exc:
        raise CorruptJournal(f"line {line_number}: bad create record: {exc}") from None


def replay_journal(path: Union[str, Path]) -> dict[int, Comment]:
    """Rebuild comment state from the journal; pure and repeatable.

    A truncated final line (crash mid-append) is skipped with a warning:
    that write was never acknowledged. Corruption anywhere else raises.
    """
    comments: dict[int, Comment] = {}
    path = Path(path)
    if not path.exists():
        return comments
    lines = path.read_text(encoding="utf-8").splitlines()
    last_content = max(
        (i for i, line in enumerate(lines) if line.strip()), default=-1
    )
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            if i == last_content:
                logger.warning("journal %s: dropping truncated final record", path)
                break
            raise CorruptJournal(f"line {i + 1}: invalid JSON") from None
        op = record.get("op")
        if op == "create":
            comment = _comment_from_record(record, i + 1)
            comments[comment.id] = comment
        elif op == "set_status":
            try:
                comment_id = int(record["id"])
                status = CommentStatus(record["status"])
            except (KeyError, ValueError) as exc:
                raise CorruptJournal(f"line {i + 1}: bad set_status record: {exc}") from None
            if comment_id not in comments:
                raise CorruptJournal(f"line {i + 1}: set_status for unknown id {comment_id}")
            comments[comment_id] = replace(comments[comment_id], status=status)
        else:
            raise CorruptJournal(f"line {i + 1}: unknown op {op!r}")
    return comments


class CommentStore:
    """Journal-backed comment store; one writer, many concurrent readers."""

    def __init__(self, journal_path: Union[str, Path]):
        self._path = Path(journal_path)
        self._comments = replay_journal(self._path)
        self._next_id = max(self._comments, default=0) + 1
        self._lock = threading.Lock()
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self._path, "a", encoding="utf-8")

    def _append(self, record: dict) -> None:
        self._fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        self._fh.flush()
        os.fsync(self._fh.fileno())

    def create(
        self,
        target: EntityId,
        comment_type: CommentType,
        text: str,
        author: str,
        now: Optional[datetime] = None,
        known_targets: Optional[Container[EntityId]] = None,
    ) -> Comment:
        """Validate, persist and return a new open comment.

        ``known_targets`` is the caller's view of resolvable entity ids
        (typically the snapshot's entity map); passing None skips the
        target check, for offline journal tooling.
        """
        if known_targets is not None and target not in known_targets:
            raise UnknownTarget(target)
        if not text or not text.strip():
            raise EmptyText("comment text must be non-empty")
        if len(text) > MAX_TEXT_LENGTH:
            raise TextTooLong(f"comment text exceeds {MAX_TEXT_LENGTH} characters")
        if not author or not author.strip():
            raise EmptyAuthor("comment author must be non-empty")
        with self._lock:
            comment = Comment(
                id=self._next_id,
                target=target,
                comment_type=comment_type,
                text=text,
                author=author,
                created_at=now if now is not None else utc_now(),
                status=CommentStatus.OPEN,
            )
            self._append(
                {
                    "op": "create",
                    "id": comment.id,
                    "target": comment.target,
                    "type": comment.comment_type.value,
                    "text": comment.text,
                    "author": comment.author,
                    "created_at": to_iso(comment.created_at),
                    "status": comment.status.value,
                }
            )
            self._comments[comment.id] = comment
            self._next_id += 1
            return comment

    def set_status(self, comment_id: int, status: CommentStatus) -> Comment:
        with self._lock:
            if comment_id not in self._comments:
                raise UnknownComment(comment_id)
            self._append({"op": "set_status", "id": comment_id, "status": status.value})
            updated = replace(self._comments[comment_id], status=status)
            self._comments[comment_id] = updated
            return updated

    def get(self, comment_id: int) -> Optional[Comment]:
        return self._comments.get(comment_id)

    def list(
        self,
        target: Optional[EntityId] = None,
        status: Optional[CommentStatus] = None,
        comment_type: Optional[CommentType] = None,
    ) -> list[Comment]:
        """All comments matching every supplied filter, ascending id."""
        return [
            c
            for _, c in sorted(self._comments.items())
            if (target is None or c.target == target)
            and (status is None or c.status == status)
            and (comment_type is None or c.comment_type == comment_type)
        ]

    def compact(self) -> None:
        """Rewrite the journal as one create record per live comment."""
        with self._lock:
            tmp = self._path.with_suffix(self._path.suffix + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                for _, c in sorted(self._comments.items()):
                    fh.write(
                        json.dumps(
                            {
                                "op": "create",
                                "id": c.id,
                                "target": c.target,
                                "type": c.comment_type.value,
                                "text": c.text,
                                "author": c.author,
                                "created_at": to_iso(c.created_at),
                                "status": c.status.value,
                            },
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
                fh.flush()
                os.fsync(fh.fileno())
            self._fh.close()
            os.replace(tmp, self._path)
            self._fh = open(self._path, "a", encoding="utf-8")

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.flush()
                self._fh.close()

    def __enter__(self) -> CommentStore:
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
