from .config import ConfigLoader, RunConfig
from .presets import PresetResult, VerificationPreset, get_preset, presets
from .runner import run
