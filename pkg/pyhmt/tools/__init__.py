from . import methods
from . import messages
from tqdm import tqdm as progressbar

__all__ = ['methods', 'messages', 'progressbar']
