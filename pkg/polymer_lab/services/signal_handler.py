import faulthandler
import os
import signal
import sys
from typing import Any

import psutil


def initialize_faulthandler() -> None:
    """Dump Python tracebacks on fatal errors inside numpy/scipy extension code.

    On Linux ``SIGUSR1`` (``SIGINFO`` on macOS) prints the traceback of all threads of a hanging run.
    """
    # stderr is forced because pytest replaces sys.stderr by an object without fileno()
    faulthandler.enable(file=sys.__stderr__)

    if sys.platform in ("linux", "darwin"):
        debug_signal = signal.SIGINFO if hasattr(signal, "SIGINFO") else signal.SIGUSR1
        faulthandler.register(debug_signal, file=sys.__stderr__)


def initialize_worker_termination_signal() -> None:
    """Make ``CTRL+C`` in one replica worker terminate all sibling workers and itself."""

    def sig_int(signal_num: int, _: Any) -> None:  # pragma: no cover
        own_pid = os.getpid()
        print(f"Replica worker {own_pid} received signal {signal_num}, terminating sibling workers")
        for sibling in psutil.Process(os.getppid()).children():
            if sibling.pid != own_pid:
                sibling.terminate()
        psutil.Process(own_pid).terminate()

    signal.signal(signal.SIGINT, sig_int)
