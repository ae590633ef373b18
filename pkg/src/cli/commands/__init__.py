from . import collide, factor, render, synthesize

__all__ = ["collide", "factor", "render", "synthesize"]
