from tempfile import TemporaryDirectory
from unittest import TestCase

from stgpytools import FileWasNotFoundError, SPath

from tests.helpers import REPAIR_PRIOR, SM74_PATH, load_sm74
from tilekit import (
    DuplicateEntityError, EmptyEntitySetError, IngestConfig, InfeasibleRepairError, NoMatchingEntitiesError,
    ParseError, ValueMode, dump_performances, load_performances, load_reference_scores, normalize_group
)


class _TempDirCase(TestCase):
    def setUp(self) -> None:
        self._tmp = TemporaryDirectory()
        self.tmp = SPath(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def write(self, name: str, text: str) -> SPath:
        path = self.tmp / name
        path.write_text(text, encoding='utf-8')

        return path


class TestSM74(TestCase):
    def test_rows(self) -> None:
        entities, report = load_performances(IngestConfig(SM74_PATH, repair_prior=REPAIR_PRIOR))

        self.assertEqual(len(entities), 74)
        self.assertEqual(report.rows, 74)
        self.assertEqual(report.probability_rows, 74)
        self.assertEqual(report.count_rows, 0)
        self.assertEqual(len(report.flagged), 62)
        self.assertEqual(report.rejected, [])
        self.assertTrue(report.ok)

    def test_glyph_groups(self) -> None:
        groups = list(load_sm74().groups.values())

        self.assertEqual(groups.count('cityscapes'), 31)
        self.assertEqual(groups.count('ade20k'), 27)
        self.assertEqual(groups.count('voc'), 12)
        self.assertEqual(groups.count('coco'), 4)
        self.assertIn('SETR (cityscapes)', load_sm74())
        self.assertIn('NonLocal Net (cityscapes)', load_sm74())

    def test_repair_keeps_tp_and_fp(self) -> None:
        setr = load_sm74()['SETR (cityscapes)'].performance

        self.assertEqual(setr.p_tp, 0.1168)
        self.assertEqual(setr.p_fp, 0.0095)
        self.assertAlmostEqual(setr.prior_pos, REPAIR_PRIOR, places=12)
        self.assertAlmostEqual(setr.p_fn, REPAIR_PRIOR - 0.1168, places=12)

    def test_every_row_shares_the_prior(self) -> None:
        for record in load_sm74().records:
            self.assertAlmostEqual(record.performance.prior_pos, REPAIR_PRIOR, places=12)

    def test_discrepancies(self) -> None:
        _, report = load_performances(IngestConfig(SM74_PATH, repair_prior=REPAIR_PRIOR))

        self.assertEqual(len(report.discrepancies), 74)
        self.assertAlmostEqual(report.discrepancies['SETR (cityscapes)'], abs(0.8663 - (1 - REPAIR_PRIOR - 0.0095)))
        self.assertEqual(report.as_dict()['max_discrepancy'], max(report.discrepancies.values()))

    def test_without_repair(self) -> None:
        entities = load_sm74(None)

        self.assertEqual(len(entities), 74)
        self.assertNotAlmostEqual(entities['SETR (cityscapes)'].performance.prior_pos, REPAIR_PRIOR, places=3)


class TestLoadPerformances(_TempDirCase):
    def test_counts(self) -> None:
        path = self.write('counts.csv', 'entity,group,tn,fp,fn,tp\nm,,50,20,10,20\n')

        entities, report = load_performances(IngestConfig(path))

        self.assertEqual(entities['m'].performance.as_tuple(), (0.5, 0.2, 0.1, 0.2))
        self.assertIsNone(entities['m'].group)
        self.assertEqual(report.count_rows, 1)

    def test_forced_mode(self) -> None:
        path = self.write('m.csv', 'entity,tn,fp,fn,tp\nm,0.5,0.2,0.1,0.4\n')

        _, report = load_performances(IngestConfig(path, ValueMode.COUNTS))

        self.assertEqual((report.count_rows, report.flagged), (1, []))

        entities, report = load_performances(IngestConfig(path, 'probabilities'))

        self.assertEqual(len(report.flagged), 1)
        self.assertAlmostEqual(sum(entities['m'].performance.as_tuple()), 1.0, places=12)

    def test_header_case_and_blank_rows(self) -> None:
        path = self.write('m.csv', '\ufeffEntity, Group ,TN,FP,FN,TP\n\nx,♣,1,1,1,1\n,,,,,\n')

        entities, _ = load_performances(IngestConfig(path))

        self.assertEqual(entities.ids, ('x (coco)', ))

    def test_missing_column(self) -> None:
        path = self.write('m.csv', 'entity,tn,fp,fn\nm,1,1,1\n')

        with self.assertRaises(ParseError):
            load_performances(IngestConfig(path))

    def test_bad_values(self) -> None:
        for row in ('m,1,x,1,1', 'm,1,-1,1,1', 'm,1,inf,1,1', 'm,0,0,0,0', ',1,1,1,1'):
            path = self.write('m.csv', f'entity,tn,fp,fn,tp\n{row}\n')

            with self.assertRaises(ParseError, msg=row):
                load_performances(IngestConfig(path))

    def test_duplicates(self) -> None:
        path = self.write('m.csv', 'entity,group,tn,fp,fn,tp\nm,voc,1,1,1,1\nm,♦,2,2,2,2\n')

        with self.assertRaises(DuplicateEntityError):
            load_performances(IngestConfig(path))

    def test_infeasible_repair(self) -> None:
        path = self.write('m.csv', 'entity,tn,fp,fn,tp\nok,0.7,0.1,0.1,0.1\nbad,0.4,0.1,0.1,0.4\n')

        with self.assertRaises(InfeasibleRepairError):
            load_performances(IngestConfig(path, repair_prior=0.2))

        with self.assertLogs('tilekit', 'WARNING'):
            entities, report = load_performances(IngestConfig(path, repair_prior=0.2, strict=False))

        self.assertEqual(entities.ids, ('ok', ))
        self.assertEqual([i.entity_id for i in report.rejected], ['bad'])
        self.assertFalse(report.ok)

    def test_empty(self) -> None:
        with self.assertRaises(EmptyEntitySetError):
            load_performances(IngestConfig(self.write('m.csv', 'entity,tn,fp,fn,tp\n')))

    def test_missing_file(self) -> None:
        with self.assertRaises(FileWasNotFoundError):
            load_performances(IngestConfig(self.tmp / 'nope.csv'))

    def test_invalid_config(self) -> None:
        for kwargs in ({'repair_prior': 1.0}, {'tolerance': 0.0}):
            with self.assertRaises(ValueError):
                IngestConfig('x.csv', **kwargs)  # type: ignore[arg-type]

    def test_dump_reload(self) -> None:
        entities = load_sm74()
        path = self.tmp / 'out' / 'sm74.csv'

        dump_performances(entities, path)
        reloaded, report = load_performances(IngestConfig(path))

        self.assertEqual(reloaded.ids, entities.ids)
        self.assertEqual(report.flagged, [])

        for eid in entities:
            self.assertEqual(reloaded[eid].performance, entities[eid].performance)
            self.assertEqual(reloaded[eid].group, entities[eid].group)


class TestReferenceScores(_TempDirCase):
    def test_matching(self) -> None:
        path = self.write('ref.csv', 'entity,group,score\nSETR,♠,50.2\nGhost,♠,1\n')

        with self.assertLogs('tilekit', 'WARNING'):
            scores = load_reference_scores(path, load_sm74())

        self.assertEqual(dict(scores), {'SETR (cityscapes)': 50.2})
        self.assertEqual(scores.unmatched, ('Ghost (cityscapes)', ))

    def test_no_match(self) -> None:
        path = self.write('ref.csv', 'entity,score\nGhost,1\n')

        with self.assertRaises(NoMatchingEntitiesError):
            load_reference_scores(path, load_sm74())

    def test_bad_score(self) -> None:
        path = self.write('ref.csv', 'entity,group,score\nSETR,♠,high\n')

        with self.assertRaises(ParseError):
            load_reference_scores(path, load_sm74())


class TestNormalizeGroup(TestCase):
    def test_glyphs(self) -> None:
        self.assertEqual(normalize_group(' ♠ '), 'cityscapes')
        self.assertEqual(normalize_group('voc'), 'voc')
        self.assertIsNone(normalize_group('  '))
        self.assertIsNone(normalize_group(None))
