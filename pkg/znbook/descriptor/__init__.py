"""Definition and utils for the Field descriptor used by all znbook records."""

from __future__ import annotations

import contextlib
import functools
import sys
import typing

with contextlib.suppress(ImportError):
    import typeguard


class Empty:  # pylint: disable=too-few-public-methods
    """Marker for a Field without default value.

    'None' is a valid default for optional record attributes (e.g. the jump tag
    of a page), therefore a missing default is 'znbook.Empty'.
    """


class Field:  # pylint: disable=too-many-instance-attributes
    """Record attribute stored in the instance __dict__.

    Fields are frozen by default: once a record is constructed its values can not
    be reassigned, which makes records safe to share between threads.

    References
    ----------
    https://docs.python.org/3/howto/descriptor.html

    Examples
    --------
    >>> from znbook.descriptor import Field
    >>>
    >>> class Budget:
    >>>     max_nodes: int = Field(1000, check_types=True)
    >>>
    >>> budget = Budget()
    >>> budget.max_nodes = 25
    >>> budget.max_nodes = 50  # TypeError: frozen
    """

    def __init__(
        self,
        default=Empty,
        *,
        frozen: bool = True,
        check_types: bool = False,
        on_setattr: typing.Callable = None,
        use_repr: bool = True,
        repr_func: typing.Callable = repr,
    ):  # pylint: disable=too-many-arguments
        """Define a Field.

        Parameters
        ----------
        default:
            Value used by the generated __init__ if the keyword is omitted.
        frozen: bool, default=True
            Refuse a second assignment of the attribute.
        check_types: bool, default=False
            Check the value against the owner's type annotation via typeguard.
        on_setattr: Callable, default=None
            Normalize the value before it is checked and stored,
            e.g. 'tuple' to store a list as an immutable tuple.
        use_repr: bool, default=True
            Include the field in the record __repr__.
        repr_func: Callable, default=repr
            Callable used to compute the __repr__ of the value.
        """
        self._default = default
        self._owner = None
        self._name = ""
        self.frozen = frozen
        self.check_types = check_types
        self.on_setattr = on_setattr
        self.use_repr = use_repr
        self.get_repr = repr_func
        if check_types and ("typeguard" not in sys.modules):
            raise ImportError("Need to install 'typeguard' for checked fields.")

    @property
    def name(self):
        """Property for the name attribute to protect changing it."""
        return self._name

    @property
    def owner(self):
        """Property for the owner attribute to protect changing it."""
        return self._owner

    @property
    def default(self):
        """Property for the default attribute to protect changing it."""
        return self._default

    @functools.cached_property
    def annotation(self):
        """Get the resolved annotation from the owner.

        String annotations (from __future__ import annotations) are evaluated
        with typing.get_type_hints.

        Raises
        ------
        KeyError:
            if type checking and the field has no annotation.
        """
        try:
            annotations_ = typing.get_type_hints(self.owner)
        except (AttributeError, NameError, TypeError):
            annotations_ = getattr(self.owner, "__annotations__", {})

        if self.check_types and self.name not in annotations_:
            raise KeyError(
                f"Could not find 'annotation' for {self.name} in '{self.owner}' with"
                " 'check_types=True'"
            )
        return annotations_.get(self.name)

    def __set_name__(self, owner, name):
        """Store name of the field in the parent class."""
        self._owner = owner
        self._name = name

    def __get__(self, instance, owner=None):
        """Get from instance.__dict__.

        Raises
        ------
        AttributeError: if the value is not in the instance.__dict__ or in self.default
        """
        if instance is None:
            return self
        value = instance.__dict__.get(self.name, self.default)
        if value is Empty:
            raise AttributeError(
                f"'{instance.__class__.__name__}.{self.name}' is not set"
            )
        return value

    def __set__(self, instance, value):
        """Save value to instance.__dict__."""
        if self.frozen and self.name in instance.__dict__:
            raise TypeError(f"Frozen attribute '{self.name}' can not be changed.")
        if self.on_setattr is not None:
            value = self.on_setattr(value)
        if self.check_types:
            typeguard.check_type(
                argname=self.name, value=value, expected_type=self.annotation
            )
        instance.__dict__[self.name] = value


FieldTypeT = typing.TypeVar("FieldTypeT", bound=Field)


def get_fields(field_type=Field, *, self=None, cls=None) -> typing.List[FieldTypeT]:
    """Get all fields of a record class in definition order.

    Fields of base classes come first, a field redefined in a subclass keeps the
    position of its first definition.

    Parameters
    ----------
    field_type:
        Field or a subclass of it, or a tuple of those.
    self:
        any record instance
    cls:
        any record class

    Returns
    -------
    list
        a list of the found Field objects
    """
    if self is None and cls is None:
        raise ValueError("Either self or cls must not be None")
    if self is not None and cls is not None:
        raise ValueError("Either self or cls must be None")
    if self is not None:
        cls = type(self)
    if not isinstance(field_type, (list, tuple)):
        field_type = (field_type,)
    found = {}
    for base in reversed(cls.__mro__):
        for name, value in vars(base).items():
            if isinstance(value, tuple(field_type)):
                found[name] = value
            elif name in found:
                # shadowed by a plain attribute in a subclass
                del found[name]
    return list(found.values())
