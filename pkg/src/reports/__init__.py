"""
FRANEL Reports Module
CSV files and gnuplot scripts
"""
