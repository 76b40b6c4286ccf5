# IoT Data Market Mechanism Engine - v0.3

__version__ = "0.3.0"
