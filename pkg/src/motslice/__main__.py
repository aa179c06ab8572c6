from .chart_cli import main

main()
