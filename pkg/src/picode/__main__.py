from picode.cli import main

raise SystemExit(main())
