"""
Walk-mode loader that imports walk-mode packages on demand.
"""

import importlib
import importlib.metadata
import logging
import os
from typing import Dict, List, Optional

from permprofile.core.registry import UnknownWalkModeError, WalkRegistry

logger = logging.getLogger(__name__)

ENTRY_POINT_GROUP = "permprofile.walks"

# used when the distribution is not installed and no entry points are visible
BUILTIN_MODES: Dict[str, str] = {
    "cycle": "walk_modes.cycle",
    "flower": "walk_modes.flower",
    "shared-edge": "walk_modes.shared_edge",
}


class WalkModeLoader:
    """
    Loads walk-mode packages only when a mode is first requested.
    """

    def __init__(self):
        self._loaded_modes: List[str] = []
        self._available_modes = self._discover_available_modes()

    def _discover_available_modes(self) -> Dict[str, str]:
        """
        Discover available walk modes from entry points.

        Returns:
            Dictionary mapping mode names to package paths
        """
        modes: Dict[str, str] = dict(BUILTIN_MODES)

        for entry_point in importlib.metadata.entry_points(group=ENTRY_POINT_GROUP):
            modes[entry_point.name] = entry_point.value
            logger.debug(
                f"Discovered walk mode: {entry_point.name} -> {entry_point.value}"
            )

        return modes

    def _load_all_modules_in_package(self, package_path: str) -> List[str]:
        """
        Import every module within a walk-mode package.

        Args:
            package_path: The package path (e.g., 'walk_modes.flower')

        Returns:
            List of imported module names
        """
        imported_modules: List[str] = []

        package = importlib.import_module(package_path)
        logger.debug(f"Imported package: {package_path}")

        if not hasattr(package, "__path__"):
            logger.warning(f"Package {package_path} has no __path__ attribute")
            return [package_path]

        package_dir = package.__path__[0]
        for item in sorted(os.listdir(package_dir)):
            if item.endswith(".py") and item != "__init__.py":
                full_module_path = f"{package_path}.{item[:-3]}"
                importlib.import_module(full_module_path)
                imported_modules.append(full_module_path)
                logger.debug(f"Successfully imported: {full_module_path}")

        return imported_modules

    def get_available_modes(self) -> List[str]:
        """Get the sorted list of walk-mode names."""
        return sorted(self._available_modes)

    def load_mode(self, name: str) -> None:
        """
        Import the package that implements a walk mode.

        Args:
            name: The mode name (e.g., 'cycle', 'flower')

        Raises:
            UnknownWalkModeError: If the mode is neither discovered nor built in
        """
        if name in self._loaded_modes:
            return

        if name not in self._available_modes:
            if WalkRegistry().is_registered(name):
                logger.debug(f"Walk mode {name!r} was registered directly; nothing to import")
                return
            raise UnknownWalkModeError(
                f"Walk mode {name!r} not available. Available: {self.get_available_modes()}"
            )

        module_path = self._available_modes[name]
        imported_modules = self._load_all_modules_in_package(module_path)
        self._loaded_modes.append(name)
        logger.info(
            f"Loaded walk mode {name!r} from {len(imported_modules)} modules: {imported_modules}"
        )

    def get_loaded_modes(self) -> List[str]:
        """Get list of currently loaded walk modes."""
        return self._loaded_modes.copy()


_loader: Optional[WalkModeLoader] = None


def load_walk_mode(name: str):
    """
    Return a compiler for a walk mode, importing its package if needed.

    Args:
        name: Mode name

    Returns:
        A WalkCompiler instance
    """
    global _loader
    if _loader is None:
        _loader = WalkModeLoader()
    _loader.load_mode(name)
    return WalkRegistry().get_compiler(name)


def available_walk_modes() -> List[str]:
    """List every walk mode that can be loaded."""
    global _loader
    if _loader is None:
        _loader = WalkModeLoader()
    return _loader.get_available_modes()
