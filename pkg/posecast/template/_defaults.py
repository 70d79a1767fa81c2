"""The frozen humanoid template shipped with the package."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ._document import TemplateDocument
from ._template import Template

DEFAULT_TEMPLATE_RESOURCE = "default_template.json"
"""Package data file holding the template constants."""


@lru_cache(maxsize=1)
def default_human_template() -> Template:
    """Ten-part humanoid used by the default scene.

    ``core`` is the root; ``head``, ``upper_arm_{l,r}`` and ``upper_leg_{l,r}``
    hang off it and each lower limb hangs off its upper limb. Anchors sit at
    the neck, shoulders, elbows, hips and knees.

    """
    text = resources.files(__package__).joinpath(DEFAULT_TEMPLATE_RESOURCE).read_text()
    return TemplateDocument.model_validate_json(text).to_template()
