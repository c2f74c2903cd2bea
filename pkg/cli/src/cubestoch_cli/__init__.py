__appname__ = "cubestoch-cli"
__version__ = "0.3.0"
