# Integration tests for Open News Insights