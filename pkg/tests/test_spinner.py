"""Tests for the progress indicators."""

import io
import threading
import unittest
from unittest.mock import MagicMock, patch

from laplimits.utils import Colors, SilentProgress, Spinner

JOIN_TIMEOUT = 0.5


def _fake_thread(alive: bool = True) -> MagicMock:
    thread = MagicMock()
    thread.is_alive.return_value = alive
    return thread


class TestSpinner(unittest.TestCase):
    def setUp(self):
        self.event = threading.Event()
        self.sink = io.StringIO()
        self.spinner = Spinner(self.event, output=self.sink, message="Certifying")

    def tearDown(self):
        self.event.set()
        thread = self.spinner._spinner_thread
        if isinstance(thread, threading.Thread) and thread.is_alive():
            thread.join(JOIN_TIMEOUT)

    def test_defaults(self):
        spinner = Spinner(output=self.sink)
        self.assertIsInstance(spinner._stop_event, threading.Event)
        self.assertFalse(spinner._stop_event.is_set())
        self.assertEqual(spinner._message, "Computing")
        self.assertEqual(spinner._sleep, 0.1)
        self.assertIsNone(spinner._spinner_thread)

    @patch("time.sleep")
    def test_worker_draws_a_coloured_frame_per_tick(self, sleep):
        self.spinner._stop_event = MagicMock()
        self.spinner._stop_event.is_set.side_effect = [False, False, True]

        self.spinner._spin_worker()

        drawn = self.sink.getvalue()
        self.assertIn(f"{Colors.CYAN}Certifying |", drawn)
        self.assertIn("Certifying /", drawn)
        self.assertTrue(drawn.endswith(Colors.ENDC))
        self.assertEqual(sleep.call_count, 2)

    def test_clear_line_blanks_the_terminal_row(self):
        self.spinner._clear_line()
        self.assertEqual(self.sink.getvalue(), "\r" + " " * 80 + "\r")

    @patch("threading.Thread")
    def test_start_resets_the_event_and_spawns_a_daemon(self, thread_cls):
        thread_cls.return_value = _fake_thread()
        self.event.set()

        self.spinner.start()

        thread_cls.assert_called_once_with(target=self.spinner._spin_worker)
        self.assertTrue(self.spinner._spinner_thread.daemon)
        self.spinner._spinner_thread.start.assert_called_once()
        self.assertFalse(self.event.is_set())

    def test_stop_joins_a_running_worker(self):
        self.spinner._spinner_thread = thread = _fake_thread(alive=True)

        with patch.object(self.spinner, "_clear_line") as clear:
            self.spinner.stop()

        self.assertTrue(self.event.is_set())
        thread.join.assert_called_once_with(JOIN_TIMEOUT)
        clear.assert_called_once()

    def test_stop_skips_the_join_for_a_finished_worker(self):
        self.spinner._spinner_thread = thread = _fake_thread(alive=False)

        with patch.object(self.spinner, "_clear_line") as clear:
            self.spinner.stop()

        thread.join.assert_not_called()
        clear.assert_called_once()

    def test_stop_without_start_only_clears(self):
        with patch.object(self.spinner, "_clear_line") as clear:
            self.spinner.stop()
        clear.assert_called_once()

    def test_real_worker_stops_in_time(self):
        self.spinner._sleep = 0.01
        self.spinner.start()
        self.spinner.stop()
        self.assertFalse(self.spinner._spinner_thread.is_alive())


class TestSilentProgress(unittest.TestCase):
    def test_start_and_stop_do_nothing(self):
        progress = SilentProgress()
        self.assertIsNone(progress.start())
        self.assertIsNone(progress.stop())


if __name__ == "__main__":
    unittest.main()
