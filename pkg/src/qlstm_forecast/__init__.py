"""Forecasting toolkit comparing a classical LSTM with a hybrid
quantum-classical QLSTM on time series.

The quantum side is self-contained: a statevector simulator with exact
Pauli-Z expectations and parameter-shift gradients, no external quantum
framework. See the ``cli`` module (or the ``qlstm-forecast`` script) for
the end-to-end train/predict/compare pipeline.
"""

__version__ = "0.1.0"
