"""CSV, chart and Markdown report writers"""
