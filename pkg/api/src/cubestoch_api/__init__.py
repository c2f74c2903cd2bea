__appname__ = "cubestoch-api"
__version__ = "0.3.0"
