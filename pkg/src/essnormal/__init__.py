"""Essential normality of homogeneous quotient modules over the polydisc."""

__version__ = "0.1.0"
