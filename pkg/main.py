#!/usr/bin/env python3
"""
Главная точка входа: проверка хроматического числа плоскости с интервалом запрещенных расстояний

Коды завершения: 0 - успех, 1 - математическая неудача (утверждение опровергнуто),
2 - ошибка использования или проверки входных данных.
"""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from config_manager import ConfigManager
from constants import check_all
from deduction import RefutationConfig, derive_all_3colorings, refute_pattern
from exceptions import ChromaticVerificationError, DomainError, InternalConsistencyError, SearchExhaustedError
from geometry import IntervalSpec, interval_from_d, interval_from_eps
from graph_io import EMITTERS, DotEmitter, SvgGraphEmitter, dumps_graph, load_colorings, load_graph, save_colorings
from graphs import (CirculantSpec, GeometricGraph, build_paper19, build_rim18, build_rim18_bichromatic,
                    build_two_ring_candidate, circulant, simplex_instance)
from logger_config import log_session_end, set_console_level, setup_unified_logger
from performance_monitor import PerformanceMonitor
from proof_replay import ProofReplayer, render_strip_svg
from solver import (FULL_GROUP, SetColoringSolver, bichromatic_extension_check, classify_colorings,
                    find_blocking_sequences, find_redundant_pairs, symmetry_group, verify_reduction)
from tiling import certify, proper_for, render_patch_svg
from verifier import TheoremVerifier

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

DEFAULT_D = 1.30
KNOWN_REDUCTIONS = ((2, 18), (2, 6), (8, 12), (14, 18))

logger = setup_unified_logger("main")


def _emit(text: str, out: Optional[str]) -> None:
    """Вывод содержимого в файл или на stdout"""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        print(f"written {path}")
    else:
        sys.stdout.write(text)


def _interval(args, default_d: Optional[float] = None) -> IntervalSpec:
    """Ровно одно из --d / --eps (или значение по умолчанию)"""
    d = getattr(args, 'd', None)
    eps = getattr(args, 'eps', None)
    if d is not None:
        return interval_from_d(d)
    if eps is not None:
        return interval_from_eps(eps)
    if default_d is None:
        raise DomainError("one of --d or --eps is required")
    return interval_from_d(default_d)


def resolve_instance(name: str, args, config: ConfigManager) -> GeometricGraph:
    """Встроенные экземпляры (rim18, paper19, rim18+biN, simplexN) или файл документа обмена"""
    tolcfg = config.tolerance_config
    bichromatic = re.fullmatch(r"rim18\+bi(\d+)", name)
    simplex = re.fullmatch(r"simplex-?(\d+)", name)
    if name == "rim18":
        return build_rim18()
    if bichromatic:
        return build_rim18_bichromatic(int(bichromatic.group(1)))
    if name == "paper19":
        return build_paper19(_interval(args, DEFAULT_D).d, tolcfg)
    if simplex:
        return simplex_instance(int(simplex.group(1)))
    if Path(name).exists():
        return load_graph(name, tolcfg)
    raise DomainError(f"unknown instance {name!r}: not a builtin (rim18, paper19, rim18+bi1, simplexN) "
                      f"and no such file")


def _parse_int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None


def cmd_graph(args, config: ConfigManager) -> int:
    tolcfg = config.tolerance_config
    if args.graph_command == "check":
        graph = load_graph(args.file, tolcfg)
        print(f"{graph.name or args.file}: {graph.n} vertices, {len(graph.edges)} edges, valid")
        return EXIT_OK

    kind, params = args.instance, args.params
    if kind == "circulant":
        if len(params) != 2:
            raise DomainError("usage: graph build circulant N OFFSETS (e.g. 18 3,4)")
        graph = circulant(CirculantSpec(int(params[0]), frozenset(_parse_int_list(params[1]))))
    elif kind == "simplex":
        if len(params) != 1:
            raise DomainError("usage: graph build simplex N")
        graph = simplex_instance(int(params[0]))
    elif kind == "two-ring":
        if len(params) != 2:
            raise DomainError("usage: graph build two-ring N1 N2 --d D [--phase P]")
        graph = build_two_ring_candidate(int(params[0]), int(params[1]), _interval(args).d, args.phase, tolcfg)
    else:
        if params:
            raise DomainError(f"instance {kind} takes no parameters")
        graph = resolve_instance(kind, args, config)

    coloring = None
    if args.coloring:
        colorings = load_colorings(args.coloring)
        if not colorings:
            raise DomainError(f"{args.coloring} contains no colorings")
        coloring = colorings[0]
    elif args.color is not None:
        coloring = SetColoringSolver(enumeration_guard_log2=config.enumeration_guard_log2).feasible(graph, args.color)
        if coloring is None:
            print(f"{graph.name}: no proper coloring with {args.color} colors")
            return EXIT_FAILURE

    if args.format == "json":
        text = dumps_graph(graph)
    elif args.format == "svg":
        text = SvgGraphEmitter(config.svg_scale).emit(graph, coloring)
    else:
        text = EMITTERS[args.format]().emit(graph, coloring)
    _emit(text, args.out)
    return EXIT_OK


def cmd_solve(args, config: ConfigManager, monitor: PerformanceMonitor) -> int:
    solver = SetColoringSolver(monitor, config.enumeration_guard_log2)
    tolcfg = config.tolerance_config

    if args.solve_command == "reductions":
        d = _interval(args, DEFAULT_D).d
        pairs = find_redundant_pairs(solver, d, tolcfg)
        print(f"{len(pairs)} removable rim pairs keep chromatic number 7 at d = {d}")
        for pair in pairs:
            print(f"  {{{pair[0]},{pair[1]}}}")
        missing = [p for p in KNOWN_REDUCTIONS if p not in pairs]
        if missing:
            print(f"❌ expected removable pairs missing: {missing}")
            return EXIT_FAILURE
        return EXIT_OK

    if args.solve_command == "reduce":
        removed = _parse_int_list(args.removed)
        keeps = verify_reduction(removed, solver, _interval(args, DEFAULT_D).d, tolcfg)
        print(f"removing {sorted(removed)}: chromatic number {'stays' if keeps else 'drops below'} 7")
        return EXIT_OK

    graph = resolve_instance(args.instance, args, config)

    if args.solve_command == "chromatic":
        kmax = args.kmax if args.kmax is not None else config.kmax
        try:
            k = solver.chromatic_number(graph, kmax)
        except SearchExhaustedError as e:
            print(f"search exhausted: no coloring with at most {e.kmax} colors (not a proof of infeasibility)")
            return EXIT_FAILURE
        print(k)
        return EXIT_OK

    if args.solve_command == "feasible":
        witness = solver.feasible(graph, args.k)
        if witness is None:
            print(f"infeasible: {graph.name or args.instance} has no proper coloring with {args.k} colors")
            return EXIT_OK
        if args.out:
            save_colorings([witness], args.out)
            print(f"written {args.out}")
        else:
            print("feasible: " + " ".join("{" + ",".join(map(str, s)) + "}" for s in witness.as_lists()))
        return EXIT_OK

    colorings = list(solver.enumerate_colorings(graph, args.k))

    if args.solve_command == "enumerate":
        if args.out:
            save_colorings(colorings, args.out)
            print(f"written {args.out}")
        print(f"{len(colorings)} proper colorings with {args.k} colors")
        return EXIT_OK

    if args.solve_command == "classify":
        group = frozenset(g.strip() for g in args.group.split(",")) if args.group else symmetry_group(graph)
        classes = classify_colorings(colorings, group, graph)
        print(f"{len(colorings)} raw colorings, {len(classes)} classes under {', '.join(sorted(group))}")
        for number, cls in enumerate(classes, 1):
            word = "".join(str(min(s) + 1) for s in cls.representative.assignment) \
                if all(len(s) == 1 for s in cls.representative.assignment) else cls.representative.as_lists()
            print(f"  class {number}: {cls.describe()}  orbit {cls.orbit_size}  members {cls.members}  {word}")
        return EXIT_OK

    # extension: двухцветная вершина в каждой раскраске
    classes = classify_colorings(colorings, symmetry_group(graph), graph)
    extendable = 0
    for cls in classes:
        coloring = cls.representative
        flags = [bichromatic_extension_check(graph, coloring, v) for v in range(graph.n)]
        extendable += sum(flags)
        blocking = find_blocking_sequences(coloring)
        print(f"{cls.describe()}: extendable vertices {[graph.label_of(v) for v, f in enumerate(flags) if f] or 'none'}; "
              f"1x223 windows start at {blocking or 'none'}")
    return EXIT_OK if extendable == 0 else EXIT_FAILURE


def cmd_replay(args, monitor: PerformanceMonitor) -> int:
    replayer = ProofReplayer(performance_monitor=monitor)
    report = replayer.replay_case(args.case)
    if args.transcript:
        _emit(report.transcript(), args.transcript)
    if args.svg:
        _emit(render_strip_svg(report), args.svg)
    print(report.summary())
    if args.verbose_trace:
        sys.stdout.write(report.transcript())
    return EXIT_OK if report.closed else EXIT_FAILURE


def cmd_refute(args) -> int:
    config = RefutationConfig(use_run_extend=args.run_extend, no_singleton_proved=args.run_extend)
    tree = refute_pattern(args.pattern, config)
    if tree.refuted:
        branches = tree.branch_vertices()
        print(f"pattern {args.pattern} refuted at vertex {tree.start}; branching on {branches or 'nothing'}")
    else:
        print(f"pattern {args.pattern} NOT refuted: completion {tree.completion.describe()}")
    return EXIT_OK


def cmd_derive(args, config: ConfigManager, monitor: PerformanceMonitor) -> int:
    solver = SetColoringSolver(monitor, config.enumeration_guard_log2)
    derived = derive_all_3colorings(solver)
    classes = classify_colorings([s.to_set_coloring() for s in derived], FULL_GROUP, build_rim18())
    print(f"{len(derived)} proper 3-colorings of the rim, {len(classes)} classes: "
          + ", ".join(cls.describe() for cls in classes))
    return EXIT_OK


def cmd_tiling(args, config: ConfigManager) -> int:
    radius = args.radius if args.radius is not None else config.search_radius
    if args.tiling_command == "certify":
        origin = tuple(_parse_int_list(args.origin)) if args.origin else (0, 0)
        if len(origin) != 2:
            raise DomainError("--origin expects q,r")
        certificate = certify(args.side, radius, origin)
        _emit(certificate.describe() + "\n", args.out)
        return EXIT_OK
    if args.tiling_command == "proper":
        spec = _interval(args)
        proper, certificate = proper_for(spec, args.side, radius)
        print(f"{'true' if proper else 'false'}: side {args.side}, tile diameter {certificate.max_intra_tile:.9f}, "
              f"same-color {certificate.min_same_color:.9f}, {spec.describe()}")
        return EXIT_OK if proper else EXIT_FAILURE
    _emit(render_patch_svg(args.side, radius, config.svg_scale), args.out)
    return EXIT_OK


def cmd_verify(args, config: ConfigManager, monitor: PerformanceMonitor) -> int:
    spec = _interval(args)
    verifier = TheoremVerifier(config_manager=config, performance_monitor=monitor)
    result = verifier.verify(spec.d)
    sys.stdout.write(result.report())
    if result.verified and args.artifacts:
        _write_artifacts(verifier, spec.d, config)
    return EXIT_OK if result.verified else EXIT_FAILURE


def _write_artifacts(verifier: TheoremVerifier, d: float, config: ConfigManager) -> None:
    """Файлы результатов в каталог output.directory"""
    directory = Path(config.output_directory)
    graph = build_paper19(d, verifier.tolcfg)
    witness = verifier.solver.feasible(graph, 7)
    _emit(dumps_graph(graph), str(directory / "paper19.json"))
    save_colorings([witness], directory / "paper19.colorings.json")
    for emitter in (DotEmitter(), SvgGraphEmitter(config.svg_scale)):
        _emit(emitter.emit(graph, witness), str(directory / f"paper19{emitter.file_suffix}"))
    for report in verifier.replayer.replay_all():
        _emit(report.transcript(), str(directory / f"replay_{report.case_id}.txt"))
        _emit(render_strip_svg(report), str(directory / f"replay_{report.case_id}.svg"))
    _emit(render_patch_svg(0.5, 3, config.svg_scale), str(directory / "hex.svg"))


def cmd_constants(args) -> int:
    rows = check_all()
    for row in rows:
        value = f"{row.value:.6f}" if row.value is not None else "-"
        delta = f"{row.delta:.1e}" if row.delta is not None else "reference only"
        mark = "✅" if row.ok else "❌"
        print(f"{mark} {row.name:<18} {row.formula:<30} computed {value:<10} quoted {row.quoted:.6f}  delta {delta}")
    return EXIT_OK if all(row.ok for row in rows) else EXIT_FAILURE


def _add_interval_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--d', type=float, help='Верхняя граница интервала [1, d]')
    group.add_argument('--eps', type=float, help='Симметричная форма [1 - eps, 1 + eps]')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='chroma7',
        description='Проверка хроматического числа плоскости с интервалом запрещенных расстояний')
    parser.add_argument('--config', '-c', default='config.json', help='Путь к файлу конфигурации')
    parser.add_argument('--tol', type=float, help='Допуск сравнения расстояний')
    parser.add_argument('--margin', type=float, help='Минимальный зазор до границы интервала')
    parser.add_argument('--verbose', '-v', action='store_true', help='Подробный вывод')
    commands = parser.add_subparsers(dest='command', required=True)

    graph = commands.add_parser('graph', help='Построение и проверка графов')
    graph_commands = graph.add_subparsers(dest='graph_command', required=True)
    build = graph_commands.add_parser('build', help='Построить экземпляр')
    build.add_argument('instance', help='rim18 | paper19 | rim18+bi1 | circulant | simplex | two-ring | файл')
    build.add_argument('params', nargs='*', help='Параметры экземпляра')
    _add_interval_args(build)
    build.add_argument('--phase', type=float, default=0.0, help='Сдвиг второго кольца (радианы)')
    build.add_argument('--format', choices=['json', 'dot', 'svg'], default='json')
    build.add_argument('--coloring', help='Документ раскрасок для изображения')
    build.add_argument('--color', type=int, help='Раскрасить k цветами перед выводом')
    build.add_argument('--out', '-o', help='Файл результата (по умолчанию stdout)')
    check = graph_commands.add_parser('check', help='Загрузить и проверить документ')
    check.add_argument('file')

    solve = commands.add_parser('solve', help='Точная раскраска множествами')
    solve_commands = solve.add_subparsers(dest='solve_command', required=True)
    chromatic = solve_commands.add_parser('chromatic', help='Хроматическое число')
    chromatic.add_argument('instance')
    chromatic.add_argument('--kmax', type=int)
    _add_interval_args(chromatic)
    for name, help_text in (('feasible', 'Свидетельство раскраски k цветами'),
                            ('enumerate', 'Все правильные раскраски'),
                            ('classify', 'Классы раскрасок по симметриям'),
                            ('extension', 'Проверка добавления второго цвета')):
        sub = solve_commands.add_parser(name, help=help_text)
        sub.add_argument('instance')
        sub.add_argument('--k', type=int, default=3)
        sub.add_argument('--out', '-o')
        _add_interval_args(sub)
        if name == 'classify':
            sub.add_argument('--group', help=f"Подмножество {','.join(sorted(FULL_GROUP))}")
    reductions = solve_commands.add_parser('reductions', help='Пары вершин обода, удаление которых сохраняет 7')
    _add_interval_args(reductions)
    reduce = solve_commands.add_parser('reduce', help='Проверить удаление вершин обода')
    reduce.add_argument('removed', help='Метки через запятую, например 2,18')
    _add_interval_args(reduce)

    replay = commands.add_parser('replay', help='Воспроизвести случай доказательства')
    replay.add_argument('case', choices=['a', 'b', 'c', 'd'])
    replay.add_argument('--transcript', help='Файл текстовой трассы')
    replay.add_argument('--svg', help='Файл диаграммы')
    replay.add_argument('--trace', dest='verbose_trace', action='store_true', help='Печатать трассу')

    refute = commands.add_parser('refute', help='Опровергнуть шаблон цветов на ободе')
    refute.add_argument('pattern')
    refute.add_argument('--run-extend', action='store_true', help='Использовать правило 2')

    commands.add_parser('derive', help='Вывести все 3-раскраски обода')

    tiling = commands.add_parser('tiling', help='Шестиугольная 7-раскраска')
    tiling_commands = tiling.add_subparsers(dest='tiling_command', required=True)
    for name in ('certify', 'proper', 'render'):
        sub = tiling_commands.add_parser(name)
        sub.add_argument('--side', type=float, default=0.5)
        sub.add_argument('--radius', type=int)
        if name == 'certify':
            sub.add_argument('--origin', help='Ячейка q,r')
        if name == 'proper':
            _add_interval_args(sub)
        if name != 'proper':
            sub.add_argument('--out', '-o')

    verify = commands.add_parser('verify', help='Проверить теорему при заданном d')
    _add_interval_args(verify)
    verify.add_argument('--artifacts', action='store_true', help='Записать файлы в output.directory')

    commands.add_parser('constants', help='Сверка именованных констант')
    return parser


def _load_config(args) -> ConfigManager:
    config = ConfigManager(args.config)
    overrides = {}
    if args.tol is not None:
        overrides['tol'] = args.tol
    if args.margin is not None:
        overrides['margin'] = args.margin
    if overrides:
        config.update('tolerance', overrides)
    return config


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Разбор аргументов и выполнение команды; возвращает код завершения"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    set_console_level(logging.INFO if args.verbose else logging.WARNING)
    monitor = PerformanceMonitor()
    try:
        config = _load_config(args)
        if args.command == 'graph':
            return cmd_graph(args, config)
        if args.command == 'solve':
            return cmd_solve(args, config, monitor)
        if args.command == 'replay':
            return cmd_replay(args, monitor)
        if args.command == 'refute':
            return cmd_refute(args)
        if args.command == 'derive':
            return cmd_derive(args, config, monitor)
        if args.command == 'tiling':
            return cmd_tiling(args, config)
        if args.command == 'verify':
            return cmd_verify(args, config, monitor)
        return cmd_constants(args)
    except (SearchExhaustedError, InternalConsistencyError) as e:
        logger.error(f"[FAIL] {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ChromaticVerificationError as e:
        logger.error(f"[ERROR] {type(e).__name__}: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"[ERROR] {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.verbose:
            monitor.log_performance_summary()


def main() -> None:
    try:
        code = run()
    except KeyboardInterrupt:
        print("\n⏹️  Interrupted")
        code = EXIT_USAGE
    finally:
        log_session_end()
    sys.exit(code)


if __name__ == "__main__":
    main()
