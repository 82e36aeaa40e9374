"""夹具文件读写

夹具为 UTF-8 JSON 文档，格式说明见 docs/format.md。
所有格式错误都抛出 FixtureFormatError，并带 JSON-pointer 风格的位置。
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from config.algorithm_config import get_exangle_config
from ..algorithms.exstruct import ExangulatedCategory, ExtStructure
from ..algorithms.fincat import FiniteCategory
from ..algorithms.linalg import Subspace
from ..exceptions import FixtureFormatError
from ..models import CategoryPresentation, ComplexNp2, DistClass, Morphism, ObjectExpr

logger = logging.getLogger(__name__)

BUILTIN_CLASSES = ("full", "split")
TOP_LEVEL_KEYS = (
    "name", "description", "field", "n", "objects", "hom", "identities", "compose",
    "ext", "ext_action_cov", "ext_action_contra", "realizations", "classes", "subcategories",
)


def pointer(*parts: Any) -> str:
    """拼接 JSON-pointer（转义 ~ 与 /）"""
    escaped = [str(p).replace("~", "~0").replace("/", "~1") for p in parts]
    return "".join("/" + p for p in escaped)


class Fixture:
    def __init__(self,
                 name: str,
                 description: str,
                 document: Dict[str, Any],
                 structure: ExangulatedCategory,
                 classes: Optional[Dict[str, DistClass]] = None,
                 subcategories: Optional[Dict[str, Tuple[str, ...]]] = None):
        """
        解析后的夹具

        :param name: 夹具名
        :param description: 说明
        :param document: 规范化后的 JSON 文档（serialize 的输入）
        :param structure: n-角结构
        :param classes: 夹具中命名的候选类
        :param subcategories: 夹具中命名的子范畴
        """
        self.name = name
        self.description = description
        self.document = document
        self.structure = structure
        self.classes = classes if classes is not None else {}
        self.subcategories = subcategories if subcategories is not None else {}

    def resolve_class(self, name: str) -> DistClass:
        from ..algorithms.proper import ProperClassChecker

        if name == "full":
            return ProperClassChecker(self.structure).full_class()
        if name == "split":
            return ProperClassChecker(self.structure).split_class()
        if name not in self.classes:
            raise FixtureFormatError(pointer("classes", name), f"未定义的候选类 {name}")
        return self.classes[name]

    def resolve_subcategory(self, name: str) -> Tuple[str, ...]:
        if name not in self.subcategories:
            raise FixtureFormatError(pointer("subcategories", name), f"未定义的子范畴 {name}")
        return self.subcategories[name]


class FixtureParser:
    """把 JSON 文档解析为范畴表示、扩张双函子与实现表"""

    def __init__(self, config: Optional[Dict] = None):
        self.config = config if config is not None else get_exangle_config()
        self.logger = self._setup_logger()

    # ==================== 基本字段 ====================

    @staticmethod
    def _require(doc: Dict, key: str, kind: type) -> Any:
        if key not in doc:
            raise FixtureFormatError("/", f"缺少字段 {key}")
        value = doc[key]
        if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
            raise FixtureFormatError(pointer(key), f"字段 {key} 类型应为 {kind.__name__}")
        return value

    @staticmethod
    def _is_prime(p: int) -> bool:
        return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))

    def _pair(self, key: str, objects: Tuple[str, ...], path: str) -> Tuple[str, str]:
        parts = key.split(",")
        if len(parts) != 2:
            raise FixtureFormatError(path, f"对象对应写作 \"X,Y\"，实际为 {key!r}")
        for name in parts:
            if name not in objects:
                raise FixtureFormatError(path, f"未知对象 {name}")
        return parts[0], parts[1]

    def _int_vector(self, value: Any, length: int, prime: int, path: str) -> np.ndarray:
        if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
            raise FixtureFormatError(path, "应为整数列表")
        if len(value) != length:
            raise FixtureFormatError(path, f"长度应为 {length}，实际为 {len(value)}")
        return np.mod(np.array(value, dtype=np.int64), prime)

    def _int_matrix(self, value: Any, rows: int, cols: int, prime: int, path: str) -> np.ndarray:
        if not isinstance(value, list):
            raise FixtureFormatError(path, "矩阵应为行列表")
        if len(value) != rows:
            raise FixtureFormatError(path, f"矩阵应有 {rows} 行，实际 {len(value)} 行")
        result = np.zeros((rows, cols), dtype=np.int64)
        for i, row in enumerate(value):
            result[i] = self._int_vector(row, cols, prime, _child(path, i))
        return result

    def _combination(self, value: Any, labels: Tuple[str, ...], prime: int, path: str) -> np.ndarray:
        """{label: coeff} 或单个标签 -> hom 空间中的坐标"""
        if isinstance(value, str):
            value = {value: 1}
        if not isinstance(value, dict):
            raise FixtureFormatError(path, "线性组合应写作 {标签: 系数}")
        coords = np.zeros(len(labels), dtype=np.int64)
        for label, coeff in value.items():
            if label not in labels:
                raise FixtureFormatError(_child(path, label), f"标签 {label} 不属于该 Hom 空间")
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise FixtureFormatError(_child(path, label), "系数应为整数")
            coords[labels.index(label)] = coeff % prime
        return coords

    # ==================== 解析 ====================

    def parse(self, doc: Any, source: str = "<memory>") -> Fixture:
        """
        解析并校验夹具文档

        :param doc: 已解码的 JSON 对象
        :param source: 来源描述（仅用于日志）
        :return: Fixture
        """
        if not isinstance(doc, dict):
            raise FixtureFormatError("/", "顶层应为 JSON 对象")
        for key in doc:
            if key not in TOP_LEVEL_KEYS:
                raise FixtureFormatError(pointer(key), f"未知字段 {key}")

        # 1. 素域、n 与对象
        prime = self._require(doc, "field", int)
        if not self._is_prime(prime):
            raise FixtureFormatError("/field", f"{prime} 不是素数")
        n = self._require(doc, "n", int)
        if n < 1:
            raise FixtureFormatError("/n", "n 应为正整数")
        raw_objects = self._require(doc, "objects", list)
        for i, name in enumerate(raw_objects):
            if not isinstance(name, str) or not name or "," in name:
                raise FixtureFormatError(pointer("objects", i), "对象名应为不含逗号的非空字符串")
        objects = tuple(raw_objects)
        if len(set(objects)) != len(objects):
            raise FixtureFormatError("/objects", "对象名重复")

        # 2. Hom 基与单位
        hom_labels, label_owner = self._parse_hom(doc.get("hom", {}), objects)
        identities = self._parse_identities(doc.get("identities", {}), objects, hom_labels, prime)

        # 3. 复合表
        compose = self._parse_compose(doc.get("compose", []), hom_labels, label_owner, identities, prime)
        presentation = CategoryPresentation(prime, objects, hom_labels, compose, identities)
        cat = FiniteCategory(presentation, self.config['max_enumeration'])

        # 4. 扩张双函子
        dims, ext_labels = self._parse_ext(doc.get("ext", {}), objects)
        cov = self._parse_actions(doc.get("ext_action_cov", []), "ext_action_cov", label_owner, dims, objects, prime)
        contra = self._parse_actions(doc.get("ext_action_contra", []), "ext_action_contra",
                                     label_owner, dims, objects, prime)
        ext = ExtStructure(cat, dims, cov, contra, ext_labels)

        # 5. 实现表
        structure = ExangulatedCategory(cat, ext, n, {}, name=str(doc.get("name", "")), config=self.config)
        table = self._parse_realizations(doc.get("realizations", []), structure, dims, hom_labels, prime)
        structure.table.update(table)

        # 6. 候选类与子范畴
        classes = self._parse_classes(doc.get("classes", {}), dims, objects, prime)
        subcategories = self._parse_subcategories(doc.get("subcategories", {}), objects)

        self.logger.info(f"夹具 {source} 解析完成: {len(objects)} 个不可分解对象, {len(dims)} 个非零扩张空间")
        return Fixture(
            name=str(doc.get("name", "")),
            description=str(doc.get("description", "")),
            document=normalize(doc),
            structure=structure,
            classes=classes,
            subcategories=subcategories,
        )

    def _parse_hom(self, hom: Any, objects: Tuple[str, ...]):
        if not isinstance(hom, dict):
            raise FixtureFormatError("/hom", "应为 JSON 对象")
        hom_labels: Dict[Tuple[str, str], Tuple[str, ...]] = {}
        owner: Dict[str, Tuple[str, str]] = {}
        for key, labels in hom.items():
            path = pointer("hom", key)
            pair = self._pair(key, objects, path)
            if not isinstance(labels, list) or not all(isinstance(x, str) and x for x in labels):
                raise FixtureFormatError(path, "基标签应为非空字符串列表")
            for label in labels:
                if label in owner:
                    raise FixtureFormatError(path, f"基标签 {label} 重复")
                owner[label] = pair
            if labels:
                hom_labels[pair] = tuple(labels)
        for name in objects:
            if (name, name) not in hom_labels:
                raise FixtureFormatError(pointer("hom", f"{name},{name}"), f"对象 {name} 的自同态空间不能为零")
        return hom_labels, owner

    def _parse_identities(self, identities: Any, objects, hom_labels, prime) -> Dict[str, np.ndarray]:
        if not isinstance(identities, dict):
            raise FixtureFormatError("/identities", "应为 JSON 对象")
        result = {}
        for name in objects:
            path = pointer("identities", name)
            if name not in identities:
                raise FixtureFormatError(path, f"缺少对象 {name} 的单位")
            result[name] = self._combination(identities[name], hom_labels[(name, name)], prime, path)
        for name in identities:
            if name not in objects:
                raise FixtureFormatError(pointer("identities", name), f"未知对象 {name}")
        return result

    def _parse_compose(self, entries: Any, hom_labels, owner, identities, prime) -> Dict[Tuple[str, str, str], np.ndarray]:
        if not isinstance(entries, list):
            raise FixtureFormatError("/compose", "应为列表")
        tensors: Dict[Tuple[str, str, str], np.ndarray] = {}
        explicit = set()

        def tensor(a: str, b: str, c: str) -> np.ndarray:
            key = (a, b, c)
            if key not in tensors:
                shape = (len(hom_labels.get((a, c), ())), len(hom_labels.get((b, c), ())),
                         len(hom_labels.get((a, b), ())))
                tensors[key] = np.zeros(shape, dtype=np.int64)
            return tensors[key]

        for i, entry in enumerate(entries):
            path = pointer("compose", i)
            if not isinstance(entry, dict):
                raise FixtureFormatError(path, "复合条目应为 {g, f, value}")
            for key in ("g", "f"):
                if entry.get(key) not in owner:
                    raise FixtureFormatError(pointer("compose", i, key), f"未知基标签 {entry.get(key)!r}")
            g, f = entry["g"], entry["f"]
            (b, c), (a, b2) = owner[g], owner[f]
            if b != b2:
                raise FixtureFormatError(path, f"{g}∘{f} 不可复合: {f} 的目标为 {b2}, {g} 的源为 {b}")
            if (g, f) in explicit:
                raise FixtureFormatError(path, f"复合 {g}∘{f} 重复给出")
            explicit.add((g, f))
            value = self._combination(entry.get("value", {}), hom_labels.get((a, c), ()), prime,
                                      pointer("compose", i, "value"))
            tensor(a, b, c)[:, hom_labels[(b, c)].index(g), hom_labels[(a, b)].index(f)] = value

        # 单位为单个基向量时补上 id∘f 与 f∘id
        for (a, b), labels in hom_labels.items():
            for index, f in enumerate(labels):
                unit = np.zeros(len(labels), dtype=np.int64)
                unit[index] = 1
                id_b = _single_label(identities[b], hom_labels[(b, b)])
                if id_b is not None and (id_b, f) not in explicit:
                    tensor(a, b, b)[:, hom_labels[(b, b)].index(id_b), index] = unit
                id_a = _single_label(identities[a], hom_labels[(a, a)])
                if id_a is not None and (f, id_a) not in explicit:
                    tensor(a, a, b)[:, index, hom_labels[(a, a)].index(id_a)] = unit
        return tensors

    def _parse_ext(self, ext: Any, objects):
        if not isinstance(ext, dict):
            raise FixtureFormatError("/ext", "应为 JSON 对象")
        dims, labels = {}, {}
        for key, names in ext.items():
            path = pointer("ext", key)
            pair = self._pair(key, objects, path)
            if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
                raise FixtureFormatError(path, "扩张基标签应为字符串列表")
            if names:
                dims[pair] = len(names)
                labels[pair] = tuple(names)
        return dims, labels

    def _parse_actions(self, entries: Any, section: str, owner, dims, objects, prime):
        if not isinstance(entries, list):
            raise FixtureFormatError(pointer(section), "应为列表")
        result = {}
        for i, entry in enumerate(entries):
            path = pointer(section, i)
            if not isinstance(entry, dict):
                raise FixtureFormatError(path, "作用条目应为 {morphism, other, matrix}")
            label, other = entry.get("morphism"), entry.get("other")
            if label not in owner:
                raise FixtureFormatError(pointer(section, i, "morphism"), f"未知基标签 {label!r}")
            if other not in objects:
                raise FixtureFormatError(pointer(section, i, "other"), f"未知对象 {other!r}")
            source, target = owner[label]
            if section == "ext_action_cov":
                # f: A → A′ 作用于 E(C, A) → E(C, A′)
                rows, cols = dims.get((other, target), 0), dims.get((other, source), 0)
            else:
                # g: C′ → C 作用于 E(C, A) → E(C′, A)
                rows, cols = dims.get((source, other), 0), dims.get((target, other), 0)
            if (label, other) in result:
                raise FixtureFormatError(path, f"作用 ({label}, {other}) 重复给出")
            result[(label, other)] = self._int_matrix(entry.get("matrix"), rows, cols, prime,
                                                      pointer(section, i, "matrix"))
        return result

    def _diff(self, value: Any, source: ObjectExpr, target: ObjectExpr, structure, hom_labels, prime,
              path: str) -> Morphism:
        cat = structure.cat
        blocks = {}
        if isinstance(value, dict):
            if len(set(source.summands)) != len(source) or len(set(target.summands)) != len(target):
                if value:
                    raise FixtureFormatError(path, "项中有重复直和项时应使用分块列表")
            for label, coeff in value.items():
                found = None
                for j, s in enumerate(source):
                    for i, t in enumerate(target):
                        if label in hom_labels.get((s, t), ()):
                            found = (i, j, s, t)
                if found is None:
                    raise FixtureFormatError(_child(path, label),
                                             f"标签 {label} 不连接这两项的直和项")
                i, j, s, t = found
                vec = blocks.setdefault((i, j), np.zeros(len(hom_labels[(s, t)]), dtype=np.int64))
                vec += self._combination({label: coeff}, hom_labels[(s, t)], prime, path)
        elif isinstance(value, list):
            for k, block in enumerate(value):
                bpath = _child(path, k)
                if not isinstance(block, dict) or not {"row", "col", "value"} <= set(block):
                    raise FixtureFormatError(bpath, "分块条目应为 {row, col, value}")
                i, j = block["row"], block["col"]
                if not (isinstance(i, int) and 0 <= i < len(target) and isinstance(j, int) and 0 <= j < len(source)):
                    raise FixtureFormatError(bpath, "分块下标越界")
                blocks[(i, j)] = self._combination(block["value"], hom_labels.get((source[j], target[i]), ()),
                                                   prime, _child(bpath, "value"))
        else:
            raise FixtureFormatError(path, "微分应写作 {标签: 系数} 或分块列表")
        return cat.from_blocks(source, target, blocks)

    def _parse_realizations(self, entries: Any, structure, dims, hom_labels, prime):
        if not isinstance(entries, list):
            raise FixtureFormatError("/realizations", "应为列表")
        n = structure.n
        objects = structure.objects
        table: Dict[Tuple[str, str, Tuple[int, ...]], ComplexNp2] = {}
        for i, entry in enumerate(entries):
            path = pointer("realizations", i)
            if not isinstance(entry, dict):
                raise FixtureFormatError(path, "实现条目应为 {ext, element, terms, diffs}")
            c, a = self._pair(str(entry.get("ext", "")), objects, pointer("realizations", i, "ext"))
            dim = dims.get((c, a), 0)
            element = self._int_vector(entry.get("element", []), dim, prime, pointer("realizations", i, "element"))
            terms_raw = entry.get("terms")
            if not isinstance(terms_raw, list) or len(terms_raw) != n + 2:
                raise FixtureFormatError(pointer("realizations", i, "terms"), f"应有 {n + 2} 项")
            terms = []
            for t, term in enumerate(terms_raw):
                tpath = pointer("realizations", i, "terms", t)
                if not isinstance(term, list) or not all(name in objects for name in term):
                    raise FixtureFormatError(tpath, "项应为已知对象名列表")
                terms.append(ObjectExpr(tuple(term)))
            if terms[0] != ObjectExpr.of(a) or terms[-1] != ObjectExpr.of(c):
                raise FixtureFormatError(pointer("realizations", i, "terms"), f"端项应为 {a} 与 {c}")
            diffs_raw = entry.get("diffs")
            if not isinstance(diffs_raw, list) or len(diffs_raw) != n + 1:
                raise FixtureFormatError(pointer("realizations", i, "diffs"), f"应有 {n + 1} 个微分")
            diffs = [self._diff(d, terms[k], terms[k + 1], structure, hom_labels, prime,
                                pointer("realizations", i, "diffs", k))
                     for k, d in enumerate(diffs_raw)]
            key = (c, a, tuple(int(x) for x in element))
            if key in table:
                raise FixtureFormatError(path, f"扩张 {c},{a}:{list(key[2])} 的实现重复给出")
            table[key] = structure.complexes.make(terms, diffs)

        # 非零元素都必须有实现
        for (c, a), dim in sorted(dims.items()):
            for delta in structure.ext.elements(ObjectExpr.of(a), ObjectExpr.of(c), self.config["max_enumeration"]):
                key = (c, a, tuple(int(x) for x in delta.coords))
                if not delta.is_zero() and key not in table:
                    raise FixtureFormatError("/realizations", f"缺少扩张 {delta.key()} 的实现")
        return table

    def _parse_classes(self, classes: Any, dims, objects, prime) -> Dict[str, DistClass]:
        if not isinstance(classes, dict):
            raise FixtureFormatError("/classes", "应为 JSON 对象")
        result = {}
        for name, spaces in classes.items():
            if name in BUILTIN_CLASSES:
                raise FixtureFormatError(pointer("classes", name), f"类名 {name} 为内置类名")
            if not isinstance(spaces, dict):
                raise FixtureFormatError(pointer("classes", name), "应为 {\"C,A\": 基向量列表}")
            subspaces = {}
            for key, rows in spaces.items():
                path = pointer("classes", name, key)
                pair = self._pair(key, objects, path)
                dim = dims.get(pair, 0)
                if not isinstance(rows, list):
                    raise FixtureFormatError(path, "应为基向量列表")
                vectors = [self._int_vector(row, dim, prime, pointer("classes", name, key, r))
                           for r, row in enumerate(rows)]
                subspaces[pair] = Subspace.span(vectors, dim, prime)
            result[name] = DistClass(name, subspaces)
        return result

    @staticmethod
    def _parse_subcategories(subcategories: Any, objects) -> Dict[str, Tuple[str, ...]]:
        if not isinstance(subcategories, dict):
            raise FixtureFormatError("/subcategories", "应为 JSON 对象")
        result = {}
        for name, members in subcategories.items():
            path = pointer("subcategories", name)
            if not isinstance(members, list):
                raise FixtureFormatError(path, "应为对象名列表")
            for k, member in enumerate(members):
                if member not in objects:
                    raise FixtureFormatError(pointer("subcategories", name, k), f"未知对象 {member!r}")
            result[name] = tuple(members)
        return result

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('FixtureParser')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger


def _child(path: str, *parts: Any) -> str:
    return ("" if path == "/" else path) + pointer(*parts)


def _single_label(coords: np.ndarray, labels: Tuple[str, ...]) -> Optional[str]:
    nonzero = np.flatnonzero(coords)
    if len(nonzero) == 1 and int(coords[nonzero[0]]) == 1:
        return labels[int(nonzero[0])]
    return None


def normalize(doc: Dict[str, Any]) -> Dict[str, Any]:
    """规范形式：补齐可选字段，列表条目按键排序"""
    result = {key: doc[key] for key in TOP_LEVEL_KEYS if key in doc}
    result.setdefault("name", "")
    result.setdefault("description", "")
    for key in ("hom", "identities", "ext", "classes", "subcategories"):
        result.setdefault(key, {})
    for key in ("compose", "ext_action_cov", "ext_action_contra", "realizations"):
        result.setdefault(key, [])
    result["compose"] = sorted(result["compose"], key=lambda e: (str(e.get("g")), str(e.get("f"))))
    for key in ("ext_action_cov", "ext_action_contra"):
        result[key] = sorted(result[key], key=lambda e: (str(e.get("morphism")), str(e.get("other"))))
    result["realizations"] = sorted(result["realizations"],
                                    key=lambda e: (str(e.get("ext")), list(e.get("element", []))))
    return json.loads(json.dumps(result))


def parse(data: Union[bytes, str, Dict[str, Any]], source: str = "<memory>",
          config: Optional[Dict] = None) -> Fixture:
    """
    解析夹具

    :param data: 文件字节、JSON 文本或已解码的对象
    :param source: 来源描述
    :param config: 生效配置（缺省取 get_exangle_config()）
    :return: Fixture
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise FixtureFormatError("/", f"不是 UTF-8 文本: {e}")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise FixtureFormatError("/", f"JSON 语法错误 (第 {e.lineno} 行第 {e.colno} 列): {e.msg}")
    return FixtureParser(config).parse(data, source)


def serialize(fixture: Fixture) -> str:
    """规范 JSON 文本：键排序、两空格缩进、LF 结尾"""
    return json.dumps(fixture.document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_fixture(path: Union[str, Path], config: Optional[Dict] = None) -> Fixture:
    """从文件读取夹具"""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise FixtureFormatError("/", f"无法读取 {path}: {e}")
    logger.debug(f"读取夹具 {path}")
    return parse(data, source=str(path), config=config)
