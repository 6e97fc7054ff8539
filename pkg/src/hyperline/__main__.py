from hyperline.cli import main

raise SystemExit(main())
