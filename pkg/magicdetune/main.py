import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from magicdetune import (settings, create_app)


def main(argv=None):
    app = create_app(settings.DefaultConfig)
    return app.run(sys.argv[1:] if argv is None else argv)


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
