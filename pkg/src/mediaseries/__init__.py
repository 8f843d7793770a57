"""mediaseries: news-corpus analytics toolkit.

Scores articles for topical content with small 1-D convolutional text
classifiers, turns the scores into time series (decomposition, structural
fitting with 99% anomaly intervals, cross-correlation), and maps the
corpus's thematic geometry with PCA and Mapper nerve graphs.
"""

__version__ = "0.1.0"
