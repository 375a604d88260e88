"""Description generation with context-dependent intonation."""
from importlib import resources

from .content_planner import Goal, PlanItem, PlanningError, plan
from .discourse import DiscourseModel, InformationStructure, record_utterance
from .kb import KBError, KnowledgeBase, load_kb, serialize_kb
from .realizer import AnnotatedUtterance, RealizationError, check_tune_wellformedness, realize

__version__ = "0.1.0"


def stereo_kb_path():
    """Path of the bundled stereo amplifier knowledge base."""
    return str(resources.files(__package__).joinpath("data/stereo.kb"))
