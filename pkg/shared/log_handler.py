import logging
from collections import deque
from typing import Deque, List


class MemoryLogHandler(logging.Handler):
    """Keeps the last ``capacity`` formatted records so a failing run can show its recent log."""

    def __init__(self, capacity: int = 200):
        super().__init__()
        self.log_deque: Deque[str] = deque(maxlen=capacity)

    def emit(self, record):
        self.log_deque.append(self.format(record))

    def get_logs(self) -> List[str]:
        return list(self.log_deque)

    def tail(self, count: int = 20) -> List[str]:
        return list(self.log_deque)[-count:] if count > 0 else []

    def clear(self):
        self.log_deque.clear()
