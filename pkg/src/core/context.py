from __future__ import annotations

import threading
from contextvars import ContextVar
from typing import Final

from src.core.errors import KernelCancelled


class CancelToken:
    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()


_CURRENT_CANCEL_TOKEN: Final[ContextVar[CancelToken | None]] = ContextVar(
    "current_cancel_token",
    default=None,
)


def set_cancel_token(token: CancelToken | None) -> object:
    return _CURRENT_CANCEL_TOKEN.set(token)


def get_cancel_token() -> CancelToken | None:
    return _CURRENT_CANCEL_TOKEN.get()


def reset_cancel_token(token: object) -> None:
    _CURRENT_CANCEL_TOKEN.reset(token)


def raise_if_cancelled() -> None:
    token = _CURRENT_CANCEL_TOKEN.get()
    if token is not None and token.cancelled:
        raise KernelCancelled("kernel cancelled by watchdog")


class Watchdog:
    """Arms a timer that cancels the current kernel run after ``timeout`` seconds.

    Used as a context manager; the token is installed in the current context so
    kernel loops observe it through ``raise_if_cancelled``.
    """

    def __init__(self, timeout: float | None) -> None:
        self.timeout = timeout
        self.token = CancelToken()
        self._timer: threading.Timer | None = None
        self._reset: object | None = None

    def __enter__(self) -> CancelToken:
        self._reset = set_cancel_token(self.token)
        if self.timeout is not None:
            if self.timeout <= 0:
                self.token.cancel()
            else:
                self._timer = threading.Timer(self.timeout, self.token.cancel)
                self._timer.daemon = True
                self._timer.start()
        return self.token

    def __exit__(self, *exc_info: object) -> None:
        if self._timer is not None:
            self._timer.cancel()
        if self._reset is not None:
            reset_cancel_token(self._reset)
