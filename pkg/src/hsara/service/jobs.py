"""In-memory job table for long-running solves.

Job ids are content hashes of the request document, so resubmitting an
identical request reuses the existing job and identical requests always
produce identical payloads. The table holds at most ``capacity`` jobs and
evicts the least recently created one first.
"""

from __future__ import annotations

import hashlib
import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional

DEFAULT_CAPACITY = 32


def job_id_for(request_doc: dict) -> str:
    canonical = json.dumps(request_doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:24]


@dataclass
class Job:
    job_id: str
    created: int
    status: str = "pending"  # pending | done | failed
    payload: Optional[Any] = None
    error: Optional[str] = None


@dataclass
class JobTable:
    capacity: int = DEFAULT_CAPACITY
    _jobs: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _counter: int = 0
    _pool: ThreadPoolExecutor = field(
        default_factory=lambda: ThreadPoolExecutor(max_workers=2)
    )

    def submit(self, request_doc: dict, work) -> str:
        """Run work() for this request unless an identical job already exists."""
        job_id = job_id_for(request_doc)
        with self._lock:
            if job_id in self._jobs:
                return job_id
            self._counter += 1
            job = Job(job_id=job_id, created=self._counter)
            self._jobs[job_id] = job
            while len(self._jobs) > self.capacity:
                oldest = min(self._jobs.values(), key=lambda j: j.created)
                del self._jobs[oldest.job_id]

        def run():
            try:
                payload = work()
            except Exception as exc:  # surface solver errors to the client
                self._finish(job_id, status="failed", error=str(exc))
            else:
                self._finish(job_id, status="done", payload=payload)

        self._pool.submit(run)
        return job_id

    def _finish(self, job_id: str, status: str, payload=None, error=None):
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:  # evicted while running
                return
            job.status = status
            job.payload = payload
            job.error = error

    def get(self, job_id: str) -> Optional[Job]:
        with self._lock:
            return self._jobs.get(job_id)
