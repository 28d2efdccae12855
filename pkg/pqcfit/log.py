import collections
import datetime
import logging
import math
import os
import sqlite3

logger = logging.getLogger(__name__)

# Ledger file name inside the output directory.
LEDGER_FILE = 'pqcfit-ledger.db'

LEDGER_SCHEMA = [
    '''
    CREATE TABLE IF NOT EXISTS runs (
        id integer primary key,
        started real not null,
        kind varchar not null,
        seed integer not null,
        status varchar not null
    )
    ''',
    '''
    CREATE TABLE IF NOT EXISTS events (
        id integer primary key,
        run integer not null references runs (id),
        timestamp real not null,
        event varchar not null
    )
    ''',
    '''
    CREATE TABLE IF NOT EXISTS functions (
        run integer not null references runs (id),
        function_index integer not null,
        seed integer not null,
        loss real,
        diverged integer not null,
        epochs integer not null,
        primary key (run, function_index)
    )
    ''',
    '''
    CREATE TABLE IF NOT EXISTS measurements (
        run integer not null references runs (id),
        name varchar not null,
        value real not null
    )
    ''',
]

# Columns of the functions table that can be summarized.
SUMMARY_COLUMNS = frozenset(['loss', 'epochs'])

RunRecord = collections.namedtuple('RunRecord', ['id', 'started', 'kind', 'seed', 'status'])

FunctionRecord = collections.namedtuple('FunctionRecord', [
    'function_index',
    'seed',
    'loss',  # None when training diverged
    'epochs',
])

ColumnStatistics = collections.namedtuple('ColumnStatistics', ['count', 'average', 'min', 'max'])


class RunLog(object):
    """Ledger of experiment runs kept next to the result files.

    Every run gets a row with its kind, seed and last event. Capability runs
    add one row per trained function, other kinds add named measurements.
    """

    def __init__(self, directory):
        try:
            os.makedirs(directory)
        except OSError:
            pass

        self.path = os.path.join(directory, LEDGER_FILE)
        self.run_id = None
        try:
            self._db = self._open()
        except sqlite3.DatabaseError:
            # Unreadable ledger, keep it aside and start a new one.
            moved = '{}.corrupted.{}'.format(self.path, datetime.datetime.now().strftime('%Y%m%d%H%M%S%f'))
            logger.warning("Run ledger %s is corrupted, moving it to %s.", self.path, moved)
            os.replace(self.path, moved)
            self._db = self._open()

    def _open(self):
        db = sqlite3.connect(self.path)
        try:
            with db:
                for statement in LEDGER_SCHEMA:
                    db.execute(statement)
        except sqlite3.DatabaseError:
            db.close()
            raise

        return db

    def _require_run(self):
        if self.run_id is None:
            raise RuntimeError("No run started in ledger {}.".format(self.path))
        return self.run_id

    def start_run(self, kind, seed, timestamp=None):
        """Open a new run and make it the current one.

        :param kind: Experiment kind
        :param seed: Experiment seed
        :param timestamp: Start datetime, now by default
        """
        timestamp = timestamp or datetime.datetime.now()
        with self._db:
            cursor = self._db.execute(
                'INSERT INTO runs (started, kind, seed, status) VALUES (?, ?, ?, ?)',
                (timestamp.timestamp(), kind, int(seed), 'start'),
            )
            self.run_id = cursor.lastrowid
            self._db.execute(
                'INSERT INTO events (run, timestamp, event) VALUES (?, ?, ?)',
                (self.run_id, timestamp.timestamp(), 'start'),
            )

        return self.run_id

    def event(self, name):
        """Record a run event, the latest event is the status of the run."""
        run = self._require_run()
        with self._db:
            self._db.execute(
                'INSERT INTO events (run, timestamp, event) VALUES (?, ?, ?)',
                (run, datetime.datetime.now().timestamp(), name),
            )
            self._db.execute('UPDATE runs SET status = ? WHERE id = ?', (name, run))

    def record_function(self, function_index, seed, loss, epochs):
        """Record the outcome of training on one function.

        Non-finite losses are stored as diverged with no loss value.
        """
        run = self._require_run()
        loss = float(loss)
        diverged = not math.isfinite(loss)
        with self._db:
            self._db.execute(
                'INSERT OR REPLACE INTO functions (run, function_index, seed, loss, diverged, epochs) '
                'VALUES (?, ?, ?, ?, ?, ?)',
                (run, int(function_index), int(seed), None if diverged else loss, int(diverged), int(epochs)),
            )

    def record_measurement(self, name, value):
        run = self._require_run()
        with self._db:
            self._db.execute(
                'INSERT INTO measurements (run, name, value) VALUES (?, ?, ?)', (run, name, float(value)))

    def runs(self):
        rows = self._db.execute('SELECT id, started, kind, seed, status FROM runs ORDER BY id')
        return [RunRecord(*row) for row in rows]

    def events(self, run=None):
        """Event names of a run in insertion order, the current run by default."""
        run = run or self._require_run()
        rows = self._db.execute('SELECT event FROM events WHERE run = ? ORDER BY id', (run,))
        return [row[0] for row in rows]

    def functions(self, run=None):
        run = run or self._require_run()
        rows = self._db.execute(
            'SELECT function_index, seed, loss, epochs FROM functions WHERE run = ? ORDER BY function_index',
            (run,),
        )
        return [FunctionRecord(*row) for row in rows]

    def diverged(self, run=None):
        """Indices of the functions whose training diverged."""
        run = run or self._require_run()
        rows = self._db.execute(
            'SELECT function_index FROM functions WHERE run = ? AND diverged ORDER BY function_index', (run,))
        return [row[0] for row in rows]

    def measurements(self, name, run=None):
        run = run or self._require_run()
        rows = self._db.execute(
            'SELECT value FROM measurements WHERE run = ? AND name = ? ORDER BY rowid', (run, name))
        return [row[0] for row in rows]

    def statistics(self, column, run=None):
        """Count, average, min and max of a functions column, diverged losses excluded.

        :param column: One of SUMMARY_COLUMNS
        :param run: Run id, the current run by default
        """
        if column not in SUMMARY_COLUMNS:
            raise ValueError("Cannot summarize column '{}'.".format(column))

        run = run or self._require_run()
        row = self._db.execute(
            'SELECT COUNT({0}), AVG({0}), MIN({0}), MAX({0}) FROM functions '
            'WHERE run = ? AND NOT diverged'.format(column),
            (run,),
        ).fetchone()
        return ColumnStatistics(*row)

    def close(self):
        """Close ledger."""
        self._db.close()
