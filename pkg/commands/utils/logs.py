import logging

import colorlog
from colorlog import ColoredFormatter

FORMAT = ('%(black)s%(asctime)-5s| %(blue)s%(name)-20s %(black)s| '
          '%(log_color)s%(levelname)-8s | %(message)s')


def setup_logging(level=logging.INFO):
    """Install one coloured stream handler on the root logger."""
    stream_handler = colorlog.StreamHandler()
    formatter = ColoredFormatter(
        FORMAT,
        datefmt='%H:%M:%S',
        reset=True,
        log_colors={
            'DEBUG': 'purple',
            'INFO': 'green',
            'WARNING': 'yellow',
            'ERROR': 'red',
            'CRITICAL': 'red,bg_white',
        },
        secondary_log_colors={},
        style='%'
    )
    stream_handler.setFormatter(formatter)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_floquet', False):
            root.removeHandler(handler)
    stream_handler._floquet = True
    root.addHandler(stream_handler)
    root.setLevel(level)
    return stream_handler
