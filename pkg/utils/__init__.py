class Singleton(type):
    """Metaclass keeping one shared instance on the class itself."""

    def __call__(cls, *args, **kw):
        if cls.__dict__.get('_instance') is None:
            cls._instance = super().__call__(*args, **kw)
        return cls._instance

    def reset(cls):
        cls._instance = None


def format_optional(value, spec, missing='N/A'):
    return missing if value is None else format(value, spec)
