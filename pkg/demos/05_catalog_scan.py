"""Classify every poset with at most five elements."""
from posetfix.catalog import scan, summarize

for n, counts in summarize(scan(5)).items():
    print(n, counts)
