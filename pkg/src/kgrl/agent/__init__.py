from .config import VARIANTS, AgentConfig
from .policy import AgentState, PolicyAgent, PolicyOutput

__all__ = ["VARIANTS", "AgentConfig", "AgentState", "PolicyAgent", "PolicyOutput"]
