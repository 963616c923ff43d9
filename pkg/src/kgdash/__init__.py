"""kgdash: quality KPIs, visitor-path analytics and a curation issue
tracker for research knowledge graphs."""

__version__ = "0.1.0"
