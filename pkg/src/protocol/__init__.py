"""The WM -> damping -> WMR protocol, its closed forms and optimal reversal."""
