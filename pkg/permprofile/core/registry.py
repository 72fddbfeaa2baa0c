"""
Walk-mode registry and decorators.

This module provides the core functionality for:
- Registering and looking up walk compilers by mode name
- Decorators for marking walk compilers and their required methods
"""

import logging
from typing import Any, Callable, Dict, List, Optional, TypeVar

logger = logging.getLogger(__name__)


def override_required(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    Decorator to mark a method as required for walk-mode implementations.

    Args:
        func: The method to mark as required

    Returns:
        The decorated method

    Raises:
        WalkModeMethodError: When called on a method that hasn't been overridden
    """

    def wrapper(*args: Any, **kwargs: Any) -> Any:
        calling_class = args[0].__class__
        method_name = func.__name__

        # the wrapper itself still being found means the subclass did not override it
        current_method = getattr(calling_class, method_name)
        if hasattr(current_method, "__override_required__"):
            raise WalkModeMethodError(
                f"Walk mode '{calling_class.__name__}' must implement the required method '{method_name}'. "
                f"This method is marked as @override_required and has no base implementation."
            )

        return current_method(*args, **kwargs)

    setattr(wrapper, "__override_required__", True)
    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__

    return wrapper


class WalkModeMethodError(Exception):
    """Raised when a walk mode doesn't implement a required method."""

    pass


class WalkRegistrationError(Exception):
    """Raised when walk-mode registration fails."""

    pass


class UnknownWalkModeError(Exception):
    """Raised when a walk mode is requested that nobody registered."""

    pass


class WalkRegistry:
    """
    Centralized registry of walk compilers.

    This is a singleton class: every walk-mode module registers into the same
    instance, and the generator looks compilers up by mode name.
    """

    _instance: Optional["WalkRegistry"] = None
    _initialized: bool = False

    def __new__(cls) -> "WalkRegistry":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._modes: Dict[str, type] = {}  # {mode_name: compiler_class}
            self._metadata: Dict[str, Dict[str, Any]] = {}  # {mode_name: metadata}
            WalkRegistry._initialized = True
            logger.debug("WalkRegistry initialized")

    def register_mode(
        self, name: str, compiler_class: type, metadata: Optional[Dict[str, Any]] = None
    ) -> None:
        """
        Register a compiler class under a mode name.

        Args:
            name: The mode name used on the command line (e.g. 'flower')
            compiler_class: The WalkCompiler subclass implementing the mode
            metadata: Optional description of the mode

        Raises:
            WalkRegistrationError: If the class is not a WalkCompiler
        """
        from permprofile.walks import WalkCompiler

        if not isinstance(compiler_class, type) or not issubclass(
            compiler_class, WalkCompiler
        ):
            raise WalkRegistrationError(
                f"Walk mode {name!r} must be a WalkCompiler subclass, got {compiler_class!r}"
            )

        if name in self._modes and self._modes[name] is not compiler_class:
            logger.warning(f"Overriding existing walk mode {name!r}")

        self._modes[name] = compiler_class
        self._metadata[name] = metadata or {}
        logger.debug(f"Registered walk mode {name!r} -> {compiler_class.__name__}")

    def unregister_mode(self, name: str) -> None:
        """Remove a mode; unknown names are ignored."""
        if self._modes.pop(name, None) is not None:
            self._metadata.pop(name, None)
            logger.debug(f"Unregistered walk mode {name!r}")

    def get_compiler(self, name: str) -> Any:
        """
        Get a compiler instance for a mode.

        Args:
            name: The mode name

        Returns:
            A fresh instance of the registered compiler class

        Raises:
            UnknownWalkModeError: If no compiler is registered under this name
        """
        compiler_class = self._modes.get(name)
        if compiler_class is None:
            raise UnknownWalkModeError(
                f"Walk mode {name!r} is not registered. Registered: {self.get_modes()}"
            )
        return compiler_class()

    def is_registered(self, name: str) -> bool:
        """Check whether a mode name has a compiler."""
        return name in self._modes

    def get_metadata(self, name: str) -> Dict[str, Any]:
        """Get the metadata recorded for a mode."""
        return dict(self._metadata.get(name, {}))

    def get_modes(self) -> List[str]:
        """Get the sorted list of registered mode names."""
        return sorted(self._modes)


T = TypeVar("T", bound=type)


def walk_mode(
    name: str, *, metadata: Optional[Dict[str, Any]] = None
) -> Callable[[T], T]:
    """
    Decorator to register a class as the compiler for a walk mode.

    Args:
        name: The mode name
        metadata: Optional metadata about the mode

    Returns:
        Decorator function
    """

    def decorator(compiler_class: T) -> T:
        WalkRegistry().register_mode(name, compiler_class, metadata)
        return compiler_class

    return decorator
