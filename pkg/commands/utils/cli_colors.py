"""ANSI palette for terminal summaries."""

import sys


class text_colors:
	RED = '\033[31m'
	GREEN = '\033[32m'
	YELLOW = '\033[33m'
	BLUE = '\033[34m'
	MAGENTA = '\033[35m'
	CYAN = '\033[36m'
	DARK_GRAY = '\033[90m'


class text_style:
	BOLD = '\033[1m'
	DIM = '\033[2m'


# spectral multiplicity -> colour of its band summary line
class multiplicity:
	GAP = text_colors.DARK_GRAY
	SIMPLE = text_colors.CYAN
	DOUBLE = text_colors.MAGENTA

	@classmethod
	def of(cls, value):
		return {0: cls.GAP, 2: cls.SIMPLE, 4: cls.DOUBLE}.get(value, ENDC)


ENDC = '\033[0m'


def paint(text, color, stream=None):
	"""``text`` wrapped in ``color`` when ``stream`` is a terminal."""
	stream = stream or sys.stdout
	if not getattr(stream, "isatty", lambda: False)():
		return text
	return f"{color}{text}{ENDC}"
