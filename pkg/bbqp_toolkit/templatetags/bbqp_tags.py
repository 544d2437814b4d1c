from fractions import Fraction

from django import template

from bbqp_toolkit.core import bitstring, decimal_string, format_solution

register = template.Library()


@register.filter
def rational(value):
    """Exact rendering: -1/4 for Fraction(-1, 4); other values as str()."""
    if isinstance(value, Fraction):
        return str(value)
    return value


@register.filter
def decimal(value):
    return decimal_string(value)


@register.filter
def bits(vector):
    return bitstring(vector)


@register.filter
def solution(value):
    return format_solution(value)
