"""Immutable records with an automatically generated keyword-only __init__."""

from __future__ import annotations

import functools
import logging
import typing
from copy import deepcopy
from inspect import Parameter, Signature

from znbook.descriptor import Empty, Field, get_fields

log = logging.getLogger(__name__)


def get_args_type_error(args: tuple, cls_name: str) -> TypeError:
    """Get a TypeError if args are used instead of kwargs."""
    return TypeError(
        f"{cls_name}.__init__() takes 1 positional argument but {len(args) + 1} were"
        " given"
    )


def get_init_type_error(required_keys: list, cls_name: str) -> TypeError:
    """Get a TypeError similar to a wrong __init__."""
    if len(required_keys) == 1:
        return TypeError(
            f"{cls_name}.__init__() missing 1 required keyword-only argument:"
            f" '{required_keys[0]}'"
        )
    return TypeError(
        f"{cls_name}.__init__() missing {len(required_keys)} required keyword-only"
        " arguments:"
        f""" '{"', '".join(required_keys[:-1])}' and '{required_keys[-1]}'"""
    )


def get_auto_init(kwargs_no_default: typing.List[str], kwargs_with_default: dict):
    """Create a keyword-only __init__ that assigns all fields.

    Parameters
    ----------
    kwargs_no_default: list[str]
        required keywords, e.g. [n, jumps] creates __init__(self, *, n, jumps)
    kwargs_with_default: dict[str, any]
        keywords with default values, e.g. {max_nodes: 10} creates
        __init__(self, *, max_nodes=10)
    """

    def auto_init(self, *args, **kwargs):
        """Assign the record fields and run the '_post_init_' validation."""
        cls_name = self.__class__.__name__
        if args:
            raise get_args_type_error(args, cls_name)

        required_keys = [key for key in kwargs_no_default if key not in kwargs]
        unexpected = [
            key
            for key in kwargs
            if key not in kwargs_with_default and key not in kwargs_no_default
        ]
        if unexpected:
            raise TypeError(
                f"{cls_name}.__init__() got an unexpected keyword argument"
                f" '{unexpected[0]}'"
            )
        if required_keys:
            raise get_init_type_error(required_keys, cls_name)

        for key in kwargs_no_default:
            setattr(self, key, kwargs[key])
        for key, value in kwargs_with_default.items():
            setattr(self, key, kwargs.get(key, deepcopy(value)))

        self._post_init_()

    # we add this attribute to the __init__ to make it identifiable
    auto_init.uses_auto_init = True
    return auto_init


def _get_auto_init_kwargs(cls) -> typing.Tuple[list, dict]:
    """Collect keywords with and without default values for the __init__."""
    kwargs_no_default = []
    kwargs_with_default = {}
    for field in get_fields(Field, cls=cls):
        if field.default is Empty:
            kwargs_no_default.append(field.name)
        else:
            kwargs_with_default[field.name] = field.default
    return kwargs_no_default, kwargs_with_default


def _get_auto_init_signature(cls) -> Signature:
    """Build the keyword-only __signature__ of the generated __init__."""
    parameters = []
    for field in get_fields(Field, cls=cls):
        parameters.append(
            Parameter(
                name=field.name,
                kind=Parameter.KEYWORD_ONLY,
                default=Parameter.empty if field.default is Empty else field.default,
            )
        )
    return Signature(parameters=parameters)


@functools.lru_cache(maxsize=None)
def record_fields(cls) -> typing.Tuple[Field, ...]:
    """Get the fields of a record class, cached per class."""
    return tuple(get_fields(Field, cls=cls))


class Record:
    """Parent class for immutable value records built from Field descriptors.

    A subclass that does not define its own __init__ gets a generated keyword-only
    __init__, a __signature__, a dataclass like __repr__ and value based
    equality / hashing over all fields.

    Examples
    --------
    >>> class Budget(Record):
    >>>     max_nodes: int = Field(1000)
    >>>
    >>> Budget(max_nodes=10)
    Budget(max_nodes=10)
    """

    def __init_subclass__(cls, **kwargs):
        """Add the generated __init__ upon class inheritance."""
        super().__init_subclass__(**kwargs)
        for inherited in cls.__mro__:
            if inherited is Record:
                break
            init = inherited.__dict__.get("__init__")
            if init is not None and not getattr(init, "uses_auto_init", False):
                return

        kwargs_no_default, kwargs_with_default = _get_auto_init_kwargs(cls)
        log.debug(f"Generating __init__ for '{cls.__name__}'")
        cls.__init__ = get_auto_init(kwargs_no_default, kwargs_with_default)
        cls.__signature__ = _get_auto_init_signature(cls)

    def _post_init_(self):
        """Validate invariants that span several fields.

        Called at the end of the generated __init__; raise to reject the record.
        """

    def _values_(self) -> tuple:
        return tuple(getattr(self, field.name) for field in record_fields(type(self)))

    def to_dict(self) -> dict:
        """Get a {field-name: value} dict of the record."""
        return {
            field.name: getattr(self, field.name) for field in record_fields(type(self))
        }

    def __eq__(self, other):
        """Compare records of the same class by their field values."""
        if type(other) is not type(self):
            return NotImplemented
        return self._values_() == other._values_()

    def __hash__(self):
        """Hash the field values, records are immutable."""
        return hash((type(self).__name__, self._values_()))

    def __repr__(self):
        """Get a dataclass like representation of the record."""
        fields = []
        for field in record_fields(type(self)):
            if not field.use_repr:
                continue
            try:
                representation = field.get_repr(getattr(self, field.name))
            except AttributeError:
                representation = "<AttributeError>"
            fields.append(f"{field.name}={representation}")
        return f"{self.__class__.__name__}({', '.join(fields)})"
