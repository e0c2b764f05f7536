from duncehat.cli import main

raise SystemExit(main())
