"""Cooperative cancellation for long-running operations."""

import threading

from .errors import OperationCancelled


class CancellationToken:
    """Thread-safe flag checked between iterations of slow loops."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def raise_if_cancelled(self, context: str = ""):
        if self._event.is_set():
            raise OperationCancelled(context or "operation cancelled")
