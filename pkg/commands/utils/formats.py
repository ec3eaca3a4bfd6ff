import csv
import dataclasses
import json
import math
import os

import numpy as np

DIGITS = 17


def entry_to_code(entries):
    width = max(map(lambda t: len(t[0]), entries))
    fmt = '{0:<{width}}: {1}'
    return '\n'.join(fmt.format(name, entry, width=width) for name, entry in entries)


def indented_entry_to_code(entries):
    width = max(map(lambda t: len(t[0]), entries))
    fmt = '  {0:>{width}}: {1}'
    return '\n'.join(fmt.format(name, entry, width=width) for name, entry in entries)


class Plural:
    def __init__(self, **attr):
        iterator = attr.items()
        self.name, self.value = next(iter(iterator))

    def __str__(self):
        v = self.value
        if v != 1:
            return '%s %ss' % (v, self.name)
        return '%s %s' % (v, self.name)


"""-------------------------------------------------------------------------"""


def number(value):
    """Locale-free text of a real with 17 significant digits."""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), f'.{DIGITS}g')


def write_csv(path, columns, rows):
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([number(row.get(c)) for c in columns])
    return path


def jsonable(value):
    """Plain JSON types; complex numbers become [re, im], non-finite reals None."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, tuple) else ''.join(map(str, k)): jsonable(v)
                for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [jsonable(value.real), jsonable(value.imag)]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def write_json(path, report):
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w') as f:
        json.dump(jsonable(report), f, indent=2, sort_keys=True, allow_nan=False)
        f.write('\n')
    return path
