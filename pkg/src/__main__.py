from src.main import main

raise SystemExit(main())
