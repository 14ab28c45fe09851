"""Factory module for resolving operation family names to family instances."""

import importlib

import tanglekit.log as log
from tanglekit.errors import UnknownFamilyError
from tanglekit.quandle.family import BaseFamily


class FamilyFactory:
    """Family factory class"""

    families_path = ["tanglekit", "quandle", "families"]
    FAMILY_CLASS_NAME_SUFFIX: str = "Family"

    _instances: dict[str, BaseFamily] = {}

    @staticmethod
    def get_module_and_class_name(family: str) -> tuple[str, str]:
        """Get the module path and class name for a family name such as "linear"."""
        parts = family.lower().split("_")
        class_name = "".join(part.capitalize() for part in parts)
        class_name += FamilyFactory.FAMILY_CLASS_NAME_SUFFIX
        module_path = ".".join(FamilyFactory.families_path + ["_".join(parts)])
        return module_path, class_name

    @staticmethod
    def load(family: str) -> BaseFamily:
        instance = FamilyFactory._instances.get(family)
        if instance is not None:
            return instance

        # Don't allow relative or dotted references
        if not family or not family.replace("_", "").isalnum():
            raise UnknownFamilyError(family)

        module_path, class_name = FamilyFactory.get_module_and_class_name(family)

        try:
            module = importlib.import_module(module_path)
            klass = getattr(module, class_name)
        except (ImportError, AttributeError):
            raise UnknownFamilyError(family)

        instance = klass()
        FamilyFactory._instances[family] = instance

        log.trace("Loaded operation family {} from {}", family, module_path)

        return instance
