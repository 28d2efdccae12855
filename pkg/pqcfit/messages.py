import collections
import csv
import io

import yaml

# Summary configuration, column of the run ledger functions table.
SummaryConfig = collections.namedtuple('SummaryConfig', ['column', 'conversion'])

# Summary of one ledger column.
Summary = collections.namedtuple('Summary', ['column', 'count', 'average', 'min', 'max'])

# Flat table columns for capability results.
CAPABILITY_COLUMNS = ['index', 'seed', 'final_loss', 'epochs_run']


def summarize(log, run, summaries):
    """Summarize per-function results of a run.

    In case the run has no function results, None is returned.

    :param log: RunLog instance
    :param run: Run id, None for the current run of the log
    :param summaries: List of columns to include, where each element is
        a SummaryConfig instance
    """
    have_values = False
    result = []
    for config in summaries:
        statistics = log.statistics(config.column, run)
        converter = config.conversion or float

        if statistics.count:
            average = float(statistics.average)
            min_value = converter(statistics.min)
            max_value = converter(statistics.max)
            have_values = True
        else:
            average = 0.0
            min_value = converter(0)
            max_value = converter(0)

        result.append(Summary(config.column, statistics.count, average, min_value, max_value))

    if not have_values:
        return

    return result


def create_result_document(kind, metadata, body):
    """Create a machine readable result document.

    :param kind: Experiment kind
    :param metadata: Mapping with configuration and seeds
    :param body: Mapping with results
    """
    document = collections.OrderedDict()
    document['kind'] = kind
    document['metadata'] = metadata
    document['result'] = body
    return yaml.safe_dump(_plain(document), default_flow_style=False, sort_keys=False)


def create_table(columns, rows):
    """Create a comma separated table with a header row."""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(value) for value in row])

    return output.getvalue()


def read_table(text):
    """Parse a table created by create_table into a list of dicts."""
    reader = csv.DictReader(io.StringIO(text))
    return [dict(row) for row in reader]


def _format_cell(value):
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def _plain(value):
    """Convert numpy scalars, tuples and ordered dicts to plain YAML types."""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if hasattr(value, 'tolist'):
        return _plain(value.tolist())
    if isinstance(value, float):
        return float(value)
    return value
