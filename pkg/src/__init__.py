"""
banditboost - online multiclass boosting with bandit feedback.
"""
