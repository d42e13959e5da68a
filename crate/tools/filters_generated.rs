// Log-spaced digital filter tables generated by tools/gen_filters.py.
// Regenerate with: python3 tools/gen_filters.py (writes filters_generated.rs).

pub static HANKEL_J1_201: DigitalFilter = DigitalFilter {
    spacing: 0.19188209108283716,
    base: &[
        4.6415888336127745e-09,
        5.6234132519034744e-09,
        6.812920690579604e-09,
        8.254041852680156e-09,
        9.999999999999982e-09,
        1.2115276586285883e-08,
        1.4677992676220664e-08,
        1.7782794100389218e-08,
        2.1544346900318783e-08,
        2.610157215682534e-08,
        3.16227766016837e-08,
        3.831186849557282e-08,
        4.6415888336127635e-08,
        5.6234132519034806e-08,
        6.812920690579612e-08,
        8.254041852680166e-08,
        9.999999999999994e-08,
        1.2115276586285875e-07,
        1.467799267622068e-07,
        1.7782794100389206e-07,
        2.1544346900318806e-07,
        2.6101572156825326e-07,
        3.1622776601683734e-07,
        3.8311868495572797e-07,
        4.6415888336127683e-07,
        5.623413251903487e-07,
        6.812920690579606e-07,
        8.254041852680175e-07,
        9.999999999999987e-07,
        1.2115276586285867e-06,
        1.467799267622067e-06,
        1.7782794100389193e-06,
        2.154434690031883e-06,
        2.6101572156825353e-06,
        3.162277660168377e-06,
        3.831186849557284e-06,
        4.6415888336127735e-06,
        5.623413251903484e-06,
        6.812920690579602e-06,
        8.25404185268017e-06,
        9.99999999999998e-06,
        1.2115276586285879e-05,
        1.4677992676220687e-05,
        1.7782794100389212e-05,
        2.1544346900318816e-05,
        2.6101572156825336e-05,
        3.162277660168375e-05,
        3.8311868495572815e-05,
        4.6415888336127784e-05,
        5.6234132519034893e-05,
        6.81292069057961e-05,
        8.254041852680179e-05,
        9.999999999999991e-05,
        0.00012115276586285871,
        0.00014677992676220676,
        0.00017782794100389203,
        0.00021544346900318802,
        0.00026101572156825363,
        0.00031622776601683783,
        0.0003831186849557286,
        0.00046415888336127757,
        0.0005623413251903486,
        0.0006812920690579605,
        0.000825404185268018,
        0.0009999999999999994,
        0.0012115276586285874,
        0.0014677992676220694,
        0.001778279410038922,
        0.0021544346900318825,
        0.002610157215682535,
        0.0031622776601683764,
        0.0038311868495572864,
        0.004641588833612776,
        0.005623413251903487,
        0.006812920690579613,
        0.008254041852680182,
        0.009999999999999995,
        0.012115276586285877,
        0.014677992676220683,
        0.017782794100389226,
        0.02154434690031883,
        0.02610157215682535,
        0.031622776601683784,
        0.03831186849557287,
        0.046415888336127774,
        0.056234132519034884,
        0.06812920690579612,
        0.08254041852680184,
        0.09999999999999998,
        0.1211527658628588,
        0.1467799267622069,
        0.17782794100389226,
        0.21544346900318834,
        0.26101572156825364,
        0.3162277660168379,
        0.3831186849557287,
        0.46415888336127786,
        0.5623413251903491,
        0.6812920690579612,
        0.8254041852680184,
        1.0,
        1.2115276586285884,
        1.4677992676220695,
        1.778279410038923,
        2.154434690031884,
        2.6101572156825372,
        3.1622776601683795,
        3.8311868495572883,
        4.641588833612779,
        5.623413251903492,
        6.812920690579614,
        8.254041852680187,
        10.000000000000002,
        12.115276586285885,
        14.677992676220699,
        17.782794100389236,
        21.544346900318843,
        26.10157215682537,
        31.622776601683803,
        38.311868495572895,
        46.41588833612781,
        56.234132519034915,
        68.12920690579618,
        82.5404185268019,
        100.00000000000004,
        121.15276586285887,
        146.77992676220697,
        177.82794100389242,
        215.44346900318848,
        261.01572156825375,
        316.22776601683825,
        383.11868495572907,
        464.15888336127813,
        562.3413251903493,
        681.2920690579614,
        825.4041852680191,
        1000.0000000000007,
        1211.527658628589,
        1467.7992676220713,
        1778.2794100389244,
        2154.434690031885,
        2610.157215682538,
        3162.2776601683804,
        3831.186849557288,
        4641.588833612786,
        5623.413251903499,
        6812.920690579622,
        8254.041852680193,
        10000.00000000001,
        12115.276586285892,
        14677.992676220701,
        17782.794100389234,
        21544.346900318837,
        26101.57215682541,
        31622.77660168384,
        38311.868495572926,
        46415.888336127835,
        56234.13251903495,
        68129.20690579616,
        82540.41852680188,
        100000.0000000002,
        121152.76586285906,
        146779.92676220718,
        177827.9410038925,
        215443.46900318863,
        261015.72156825394,
        316227.76601683814,
        383118.684955729,
        464158.88336127804,
        562341.3251903502,
        681292.0690579624,
        825404.1852680197,
        1000000.0000000013,
        1211527.6586285897,
        1467799.2676220709,
        1778279.410038924,
        2154434.6900318884,
        2610157.215682542,
        3162277.660168385,
        3831186.849557294,
        4641588.833612786,
        5623413.251903498,
        6812920.69057962,
        8254041.852680191,
        10000000.000000006,
        12115276.586285912,
        14677992.676220698,
        17782794.10038926,
        21544346.90031891,
        26101572.156825405,
        31622776.60168389,
        38311868.49557292,
        46415888.33612791,
        56234132.51903494,
        68129206.90579627,
        82540418.52680185,
        100000000.00000018,
        121152765.86285925,
        146779926.76220715,
        177827941.00389278,
        215443469.00318858,
    ],
    weights: &[
        -1.5283789440810372e-06,
        -3.072231027116483e-07,
        2.6635109014943768e-06,
        -5.054657198766419e-06,
        6.960631283900217e-06,
        -7.941311663974169e-06,
        7.739176086620454e-06,
        -6.347124498185501e-06,
        4.02440419837784e-06,
        -1.2541444926599473e-06,
        -1.3514225415734163e-06,
        3.180035162509291e-06,
        -3.7561009691265856e-06,
        2.855098191029933e-06,
        -5.689237430557491e-07,
        -2.695296846432015e-06,
        6.286731568784989e-06,
        -9.441132037977333e-06,
        1.1444587304560611e-05,
        -1.1796441554542096e-05,
        1.0335100870969618e-05,
        -7.296371376225743e-06,
        3.286975117154793e-06,
        8.264356233277666e-07,
        -4.093689856068222e-06,
        5.688089758775044e-06,
        -5.100013946169357e-06,
        2.273147516145002e-06,
        2.350955996002414e-06,
        -7.896330161305432e-06,
        1.3217636307326437e-05,
        -1.713736250551119e-05,
        1.870766896378947e-05,
        -1.7440402698814652e-05,
        1.3451754128677982e-05,
        -7.482861813257973e-06,
        7.823669910440902e-07,
        5.1337502217862495e-06,
        -8.801063258904656e-06,
        9.139842001632964e-06,
        -5.7290820969869215e-06,
        -1.04388288270352e-06,
        1.00025629113095e-05,
        -1.9378061584720305e-05,
        2.715638070429696e-05,
        -3.150954429593035e-05,
        3.122550855821904e-05,
        -2.6035816222846816e-05,
        1.6766566591943175e-05,
        -5.251591886938268e-06,
        -5.978314118284062e-06,
        1.420656525673028e-05,
        -1.711196410299048e-05,
        1.3350168902425967e-05,
        -2.928714069851826e-06,
        -1.2614867921421485e-05,
        3.04586794296781e-05,
        -4.6910026683077165e-05,
        5.827335093850304e-05,
        -6.149926655585886e-05,
        5.5224460015414804e-05,
        -3.9872652981560025e-05,
        1.8366025715554313e-05,
        5.106130916232018e-06,
        -2.4595086440749507e-05,
        3.5401562531612704e-05,
        -3.25286400960695e-05,
        1.5842314107221707e-05,
        1.5229785838616938e-05,
        -5.284269156604112e-05,
        9.425321270883764e-05,
        -0.00012419404644999708,
        0.00014440615082534294,
        -0.0001347956451024336,
        0.00011492900284608777,
        -5.724351875189357e-05,
        1.598846847217261e-05,
        6.304120088460826e-05,
        -6.698872649780663e-05,
        0.00012647401812134227,
        -2.060524625077835e-05,
        5.795348689801554e-05,
        0.00021041811920312069,
        -9.905451962704952e-05,
        0.0005663571961390955,
        -0.00014329698107304353,
        0.0009196427840673354,
        0.00022721623121119751,
        0.0012547407745443465,
        0.001304396202007012,
        0.0019365335079267216,
        0.0033501177592543253,
        0.0039851064515249515,
        0.006879336842619888,
        0.00933595806903539,
        0.01345658711887955,
        0.02123336033060713,
        0.027117807013672498,
        0.045011104450822084,
        0.05609666228816612,
        0.08876405314235114,
        0.11237656178128752,
        0.15881223111108636,
        0.1976592019028234,
        0.2290535645125438,
        0.24331329724063447,
        0.15130111605471386,
        0.02603712942458019,
        -0.2745515845203315,
        -0.3073527941614872,
        -0.14783955410375274,
        0.5045437263092778,
        -0.035468615298396636,
        -0.3282991385909054,
        0.30123160247401143,
        -0.15826174193435086,
        0.05621913114331982,
        -0.004196976092433704,
        -0.019580511987063055,
        0.029485696751317163,
        -0.03228711721982026,
        0.031159605333364423,
        -0.027804989406163653,
        0.0232921005269524,
        -0.01836765840835049,
        0.013570535943836969,
        -0.009275510986384803,
        0.0057143914250567356,
        -0.0029930941298093217,
        0.0011113825193299217,
        1.3374178564252126e-05,
        -0.0005196177870275862,
        0.0005745306905107371,
        -0.0003490840855135529,
        -2.5013428468366236e-06,
        0.00035727725181644007,
        -0.0006313504185429002,
        0.0007811172963745738,
        -0.0007989400124312834,
        0.0007048319438474786,
        -0.0005360174227051946,
        0.000336231437033441,
        -0.0001463638180573608,
        -2.4033034865048677e-06,
        9.237565828190896e-05,
        -0.00012002278756008573,
        9.401599640632334e-05,
        -3.143851472096017e-05,
        -4.685689021134643e-05,
        0.00012078409146406857,
        -0.0001746661206278572,
        0.00019947418210376403,
        -0.00019347715568557278,
        0.00016142518574188707,
        -0.00011263556301761848,
        5.849508140316833e-05,
        -9.927693222811043e-06,
        -2.4692333713427304e-05,
        4.084828107159825e-05,
        -3.8265254941442374e-05,
        2.041798116744408e-05,
        6.631459604265747e-06,
        -3.575804579282228e-05,
        6.032081755403828e-05,
        -7.542899582534231e-05,
        7.871319910361663e-05,
        -7.050783621502373e-05,
        5.3475468353896314e-05,
        -3.180910338490125e-05,
        1.0216027510708204e-05,
        7.0921497357019726e-06,
        -1.720333891189926e-05,
        1.8964022682448337e-05,
        -1.3037019560293668e-05,
        1.5865894844376521e-06,
        1.2309294928775836e-05,
        -2.537502286411477e-05,
        3.482541476758761e-05,
        -3.888968070380123e-05,
        3.7080599526409336e-05,
        -3.0177640222515775e-05,
        1.995308590549405e-05,
        -8.719443731881284e-06,
        -1.1943096663438247e-06,
        7.924930416053525e-06,
        -1.042078573172795e-05,
        8.592189735632259e-06,
        -3.251568980310038e-06,
        -4.12723168555883e-06,
        1.1766700531624455e-05,
        -1.7977834100985432e-05,
        2.1503520986873265e-05,
        -2.174630674932518e-05,
        1.884246513816248e-05,
        -1.3578660487554246e-05,
        7.180057966200429e-06,
        -1.023026519006931e-06,
        -3.662765972607074e-06,
        6.040520580659723e-06,
        -5.813461833416245e-06,
        3.2494245282777114e-06,
    ],
};

pub static HANKEL_J1_101: DigitalFilter = DigitalFilter {
    spacing: 0.28782313662425574,
    base: &[
        5.623413251903487e-07,
        7.498942093324544e-07,
        9.999999999999987e-07,
        1.333521432163323e-06,
        1.7782794100389193e-06,
        2.3713737056616522e-06,
        3.162277660168377e-06,
        4.216965034285814e-06,
        5.623413251903484e-06,
        7.498942093324552e-06,
        9.99999999999998e-06,
        1.3335214321633222e-05,
        1.7782794100389212e-05,
        2.3713737056616547e-05,
        3.162277660168375e-05,
        4.216965034285819e-05,
        5.6234132519034893e-05,
        7.498942093324548e-05,
        9.999999999999991e-05,
        0.00013335214321633237,
        0.00017782794100389203,
        0.00023713737056616532,
        0.00031622776601683783,
        0.00042169650342858197,
        0.0005623413251903486,
        0.0007498942093324555,
        0.0009999999999999994,
        0.0013335214321633228,
        0.001778279410038922,
        0.0023713737056616536,
        0.0031622776601683764,
        0.00421696503428582,
        0.005623413251903487,
        0.007498942093324557,
        0.009999999999999995,
        0.01333521432163323,
        0.017782794100389226,
        0.02371373705661654,
        0.031622776601683784,
        0.04216965034285822,
        0.056234132519034884,
        0.07498942093324555,
        0.09999999999999998,
        0.1333521432163324,
        0.17782794100389226,
        0.23713737056616546,
        0.3162277660168379,
        0.4216965034285822,
        0.5623413251903491,
        0.7498942093324558,
        1.0,
        1.333521432163324,
        1.778279410038923,
        2.3713737056616555,
        3.1622776601683795,
        4.216965034285823,
        5.623413251903492,
        7.498942093324559,
        10.000000000000002,
        13.335214321633245,
        17.782794100389236,
        23.713737056616555,
        31.622776601683803,
        42.16965034285825,
        56.234132519034915,
        74.98942093324564,
        100.00000000000004,
        133.35214321633242,
        177.82794100389242,
        237.13737056616563,
        316.22776601683825,
        421.69650342858256,
        562.3413251903493,
        749.8942093324565,
        1000.0000000000007,
        1333.5214321633246,
        1778.2794100389244,
        2371.373705661657,
        3162.2776601683804,
        4216.965034285826,
        5623.413251903499,
        7498.94209332456,
        10000.00000000001,
        13335.214321633259,
        17782.794100389234,
        23713.737056616574,
        31622.77660168384,
        42169.65034285824,
        56234.13251903495,
        74989.42093324568,
        100000.0000000002,
        133352.1432163325,
        177827.9410038925,
        237137.37056616598,
        316227.76601683814,
        421696.5034285828,
        562341.3251903502,
        749894.2093324563,
        1000000.0000000013,
        1333521.4321633265,
        1778279.410038924,
    ],
    weights: &[
        -4.402233848001352e-06,
        -5.549177555760111e-06,
        2.272000838276152e-05,
        -4.438240416414506e-05,
        6.649858159543917e-05,
        -8.448550892363032e-05,
        9.419109167810442e-05,
        -9.288994007124044e-05,
        8.008047647956798e-05,
        -5.788267853891232e-05,
        3.089956570833091e-05,
        -5.505089263442692e-06,
        -1.1356767468693041e-05,
        1.3662394677309144e-05,
        2.2048250028798554e-06,
        -3.6294057089986664e-05,
        8.456429902269013e-05,
        -0.00013918759896572888,
        0.00018976615233808758,
        -0.00022527643172644897,
        0.00023653227107862867,
        -0.00021852776854633293,
        0.0001724618343335206,
        -0.00010636636423876002,
        3.5010907499025374e-05,
        2.2885579732607045e-05,
        -4.670295194825293e-05,
        2.057114117986103e-05,
        6.645272949628606e-05,
        -0.00020919550074042037,
        0.0003977851849285335,
        -0.0005942914219816884,
        0.0007784293974875036,
        -0.0008784276351239707,
        0.0009134838943847547,
        -0.0007652576908490869,
        0.0006108924058918366,
        -0.00017708970590151656,
        8.322667546431627e-05,
        0.0005422252882126509,
        0.00016608226060636682,
        0.0007343605693451257,
        0.00237576510836542,
        0.00014467396101545951,
        0.009069384806677135,
        0.000740435424656557,
        0.024776518562184248,
        0.01091296648847199,
        0.061334950998115645,
        0.05479639627834757,
        0.14912965266087294,
        0.18045777644782474,
        0.3176676754106781,
        0.34473538888543276,
        0.25529955892073,
        -0.16153138564434538,
        -0.5786703369488718,
        0.36998886316073337,
        0.030814868044114558,
        -0.15058363933299582,
        0.13525826417559594,
        -0.10025514317472713,
        0.07114235809687387,
        -0.048903441375127726,
        0.031840303742430784,
        -0.0187626061390946,
        0.008953243610923336,
        -0.001918790208279724,
        -0.0027562700307726708,
        0.005473787445314958,
        -0.006639831395577638,
        0.006658162566768444,
        -0.005912519656594517,
        0.00474613380614226,
        -0.003443937302435761,
        0.002220788752381146,
        -0.0012172782857553777,
        0.0005031976057897028,
        -8.758219651224096e-05,
        -6.658964759963785e-05,
        2.5386797833033614e-05,
        0.000133009861566105,
        -0.00033308572644633543,
        0.0005130940090248267,
        -0.0006316694041076429,
        0.000669878210265104,
        -0.0006292805945500259,
        0.0005270618357534986,
        -0.00038954917177448813,
        0.0002454574089286078,
        -0.00012002489200588344,
        3.0866294211198934e-05,
        1.4047788889690014e-05,
        -1.629560067358577e-05,
        -1.4838046360983536e-05,
        6.533860034993306e-05,
        -0.0001198557582105695,
        0.00016483048589737857,
        -0.0001908186447489748,
        0.00019369662738344474,
        -0.0001746822141752582,
    ],
};

pub static SINE_361: DigitalFilter = DigitalFilter {
    spacing: 0.15350567286626973,
    base: &[
        9.999999999999974e-13,
        1.1659144011798293e-12,
        1.3593563908785188e-12,
        1.5848931924611063e-12,
        1.8478497974222834e-12,
        2.1544346900318763e-12,
        2.511886431509573e-12,
        2.9286445646252295e-12,
        3.4145488738335958e-12,
        3.981071705534953e-12,
        4.6415888336127596e-12,
        5.411695265464617e-12,
        6.309573444801913e-12,
        7.356422544596395e-12,
        8.576958985908923e-12,
        9.99999999999995e-12,
        1.1659144011798265e-11,
        1.3593563908785202e-11,
        1.5848931924611082e-11,
        1.8478497974222857e-11,
        2.1544346900318787e-11,
        2.5118864315095755e-11,
        2.9286445646252224e-11,
        3.414548873833587e-11,
        3.981071705534958e-11,
        4.6415888336127644e-11,
        5.411695265464623e-11,
        6.309573444801919e-11,
        7.356422544596403e-11,
        8.576958985908902e-11,
        9.99999999999996e-11,
        1.1659144011798277e-10,
        1.3593563908785218e-10,
        1.5848931924611098e-10,
        1.8478497974222877e-10,
        2.1544346900318812e-10,
        2.5118864315095696e-10,
        2.928644564625226e-10,
        3.414548873833591e-10,
        3.981071705534962e-10,
        4.6415888336127696e-10,
        5.411695265464629e-10,
        6.309573444801904e-10,
        7.356422544596384e-10,
        8.576958985908912e-10,
        9.999999999999972e-10,
        1.1659144011798291e-09,
        1.3593563908785233e-09,
        1.5848931924611115e-09,
        1.8478497974222832e-09,
        2.154434690031876e-09,
        2.5118864315095725e-09,
        2.928644564625229e-09,
        3.4145488738335947e-09,
        3.9810717055349665e-09,
        4.6415888336127745e-09,
        5.411695265464616e-09,
        6.3095734448019114e-09,
        7.356422544596393e-09,
        8.576958985908922e-09,
        9.999999999999982e-09,
        1.1659144011798304e-08,
        1.3593563908785248e-08,
        1.5848931924611077e-08,
        1.8478497974222853e-08,
        2.1544346900318783e-08,
        2.511886431509575e-08,
        2.928644564625232e-08,
        3.4145488738335984e-08,
        3.981071705534957e-08,
        4.6415888336127635e-08,
        5.4116952654646214e-08,
        6.309573444801918e-08,
        7.3564225445964e-08,
        8.576958985908931e-08,
        9.999999999999994e-08,
        1.1659144011798295e-07,
        1.3593563908785237e-07,
        1.5848931924611096e-07,
        1.8478497974222871e-07,
        2.1544346900318806e-07,
        2.5118864315095733e-07,
        2.9286445646252304e-07,
        3.414548873833596e-07,
        3.9810717055349613e-07,
        4.6415888336127683e-07,
        5.411695265464628e-07,
        6.309573444801925e-07,
        7.356422544596395e-07,
        8.576958985908925e-07,
        9.999999999999987e-07,
        1.1659144011798289e-06,
        1.359356390878523e-06,
        1.5848931924611111e-06,
        1.8478497974222894e-06,
        2.1544346900318793e-06,
        2.5118864315095763e-06,
        2.9286445646252336e-06,
        3.4145488738335937e-06,
        3.981071705534966e-06,
        4.6415888336127735e-06,
        5.411695265464624e-06,
        6.309573444801921e-06,
        7.3564225445964036e-06,
        8.576958985908935e-06,
        9.99999999999998e-06,
        1.16591440117983e-05,
        1.3593563908785244e-05,
        1.58489319246111e-05,
        1.847849797422288e-05,
        2.1544346900318816e-05,
        2.5118864315095744e-05,
        2.9286445646252316e-05,
        3.4145488738335975e-05,
        3.98107170553497e-05,
        4.64158883361277e-05,
        5.41169526546463e-05,
        6.309573444801928e-05,
        7.356422544596398e-05,
        8.576958985908929e-05,
        9.999999999999991e-05,
        0.00011659144011798314,
        0.00013593563908785236,
        0.00015848931924611118,
        0.000184784979742229,
        0.00021544346900318802,
        0.00025118864315095774,
        0.0002928644564625235,
        0.00034145488738335987,
        0.00039810717055349676,
        0.00046415888336127757,
        0.0005411695265464631,
        0.0006309573444801923,
        0.0007356422544596406,
        0.0008576958985908931,
        0.0009999999999999994,
        0.0011659144011798306,
        0.001359356390878525,
        0.0015848931924611123,
        0.001847849797422289,
        0.0021544346900318825,
        0.0025118864315095777,
        0.0029286445646252352,
        0.003414548873833599,
        0.003981071705534968,
        0.004641588833612776,
        0.005411695265464632,
        0.00630957344480193,
        0.007356422544596408,
        0.008576958985908933,
        0.009999999999999995,
        0.011659144011798309,
        0.013593563908785253,
        0.015848931924611127,
        0.0184784979742229,
        0.02154434690031883,
        0.025118864315095784,
        0.029286445646252348,
        0.034145488738336,
        0.039810717055349706,
        0.046415888336127774,
        0.054116952654646354,
        0.06309573444801929,
        0.0735642254459641,
        0.08576958985908939,
        0.09999999999999998,
        0.11659144011798316,
        0.13593563908785253,
        0.1584893192461113,
        0.18478497974222904,
        0.21544346900318834,
        0.25118864315095796,
        0.2928644564625236,
        0.34145488738336016,
        0.3981071705534972,
        0.46415888336127786,
        0.5411695265464637,
        0.6309573444801931,
        0.7356422544596413,
        0.8576958985908941,
        1.0,
        1.1659144011798317,
        1.3593563908785256,
        1.5848931924611136,
        1.8478497974222912,
        2.154434690031884,
        2.5118864315095806,
        2.9286445646252366,
        3.4145488738336023,
        3.9810717055349736,
        4.641588833612779,
        5.411695265464638,
        6.309573444801934,
        7.356422544596414,
        8.576958985908941,
        10.000000000000002,
        11.659144011798322,
        13.593563908785262,
        15.848931924611144,
        18.47849797422291,
        21.544346900318843,
        25.11886431509581,
        29.28644564625238,
        34.145488738336034,
        39.810717055349755,
        46.41588833612781,
        54.11695265464639,
        63.095734448019364,
        73.56422544596415,
        85.76958985908948,
        100.00000000000004,
        116.59144011798328,
        135.93563908785265,
        158.4893192461114,
        184.78497974222924,
        215.44346900318848,
        251.18864315095828,
        292.86445646252383,
        341.4548873833603,
        398.1071705534976,
        464.15888336127813,
        541.1695265464642,
        630.9573444801937,
        735.6422544596417,
        857.695898590895,
        1000.0000000000007,
        1165.914401179833,
        1359.3563908785268,
        1584.8931924611156,
        1847.849797422293,
        2154.434690031885,
        2511.8864315095834,
        2928.644564625239,
        3414.5488738336035,
        3981.071705534977,
        4641.588833612786,
        5411.695265464639,
        6309.573444801938,
        7356.422544596425,
        8576.958985908945,
        10000.00000000001,
        11659.144011798333,
        13593.563908785283,
        15848.931924611146,
        18478.497974222933,
        21544.346900318877,
        25118.864315095816,
        29286.4456462524,
        34145.48873833608,
        39810.717055349814,
        46415.888336127835,
        54116.952654646455,
        63095.73444801946,
        73564.2254459642,
        85769.58985908954,
        100000.0000000002,
        116591.44011798326,
        135935.63908785273,
        158489.31924611164,
        184784.97974222954,
        215443.46900318863,
        251188.64315095844,
        292864.4564625243,
        341454.88738336053,
        398107.17055349785,
        464158.88336127886,
        541169.5265464642,
        630957.3444801942,
        735642.2544596428,
        857695.8985908963,
        1000000.0000000013,
        1165914.4011798338,
        1359356.3908785288,
        1584893.1924611153,
        1847849.797422294,
        2154434.6900318884,
        2511886.431509587,
        2928644.5646252413,
        3414548.873833609,
        3981071.705534983,
        4641588.833612786,
        5411695.265464648,
        6309573.444801948,
        7356422.544596422,
        8576958.985908957,
        10000000.000000006,
        11659144.011798332,
        13593563.90878528,
        15848931.924611172,
        18478497.97422296,
        21544346.90031891,
        25118864.315095898,
        29286445.64625239,
        34145488.738336064,
        39810717.055349804,
        46415888.33612791,
        54116952.65464654,
        63095734.44801956,
        73564225.44596417,
        85769589.85908951,
        100000000.00000018,
        116591440.11798345,
        135935639.08785295,
        158489319.24611187,
        184784979.74222982,
        215443469.00318858,
        251188643.1509584,
        292864456.46252424,
        341454887.38336104,
        398107170.5534985,
        464158883.3612796,
        541169526.546466,
        630957344.480194,
        735642254.4596426,
        857695898.5908961,
        1000000000.0000029,
        1165914401.1798358,
        1359356390.878531,
        1584893192.4611206,
        1847849797.4222937,
        2154434690.031888,
        2511886431.509587,
        2928644564.6252456,
        3414548873.8336143,
        3981071705.5349894,
        4641588833.612784,
        5411695265.464646,
        6309573444.801947,
        7356422544.596434,
        8576958985.90897,
        10000000000.00004,
        11659144011.79837,
        13593563908.785276,
        15848931924.611168,
        18478497974.222958,
        21544346900.318905,
        25118864315.095894,
        29286445646.252487,
        34145488738.336178,
        39810717055.34979,
        46415888336.1279,
        54116952654.64652,
        63095734448.01954,
        73564225445.96442,
        85769589859.0898,
        100000000000.0005,
        116591440117.98341,
        135935639087.85292,
        158489319246.11185,
        184784979742.22977,
        215443469003.18927,
        251188643150.95923,
        292864456462.5242,
        341454887383.36096,
        398107170553.4984,
        464158883361.2795,
        541169526546.4658,
        630957344480.196,
        735642254459.645,
        857695898590.8959,
        1000000000000.0026,
    ],
    weights: &[
        -8.646911733868842e-08,
        2.1962445945135273e-07,
        -2.659478605722034e-08,
        -2.3287273171134288e-07,
        1.9764835596750315e-07,
        9.114252730777411e-08,
        -2.3513159777640322e-07,
        2.654120934369534e-08,
        2.540473030931465e-07,
        -2.1591650718684125e-07,
        -9.677167279603249e-08,
        2.52874849664182e-07,
        -2.708253577615162e-08,
        -2.769012556385854e-07,
        2.3544880917253344e-07,
        1.0393954391500578e-07,
        -2.7365187833879677e-07,
        2.881602676950088e-08,
        3.011298894121543e-07,
        -2.5584554111161885e-07,
        -1.1349071911444096e-07,
        2.9856607004335595e-07,
        -3.2615667610001374e-08,
        -3.261977216240012e-07,
        2.764535492811596e-07,
        1.2660875203796483e-07,
        -3.291121545259644e-07,
        3.9710283953827116e-08,
        3.5127189067781553e-07,
        -2.9629687941969496e-07,
        -1.4490159288346183e-07,
        3.672702314604256e-07,
        -5.176634613876124e-08,
        -3.751558058507459e-07,
        3.1400918844958106e-07,
        1.7048688741562763e-07,
        -4.155992461254054e-07,
        7.096445850579974e-08,
        3.962365253978579e-07,
        -3.2778297960145474e-07,
        -2.0606142449251327e-07,
        4.773128121067312e-07,
        -1.0004937995844088e-07,
        -4.124696599087332e-07,
        3.35361892520612e-07,
        2.549272259966343e-07,
        -5.563076733928455e-07,
        1.4231939919414782e-07,
        4.214412630991555e-07,
        -3.3411916645660626e-07,
        -3.2092906759740446e-07,
        6.570962436539462e-07,
        -2.0150008328964745e-07,
        -4.2056921833382435e-07,
        3.212901057822374e-07,
        4.082324330179532e-07,
        -7.845673744760124e-07,
        2.814175184030741e-07,
        4.0753953510239566e-07,
        -2.9446141413816685e-07,
        -5.208346061841092e-07,
        9.4346137544847e-07,
        -3.8534467968181807e-07,
        -3.811183025283499e-07,
        2.5246815618651757e-07,
        6.616524770747901e-07,
        -1.1373942280810576e-06,
        5.148394437443582e-07,
        3.4253984352933763e-07,
        -1.969115848071076e-07,
        -8.309675359688001e-07,
        1.3672013320546457e-06,
        -6.678237506711729e-07,
        -2.977457378097774e-07,
        1.3458721622019596e-07,
        1.0239336475127853e-06,
        -1.6282964460486946e-06,
        8.355750319174221e-07,
        2.6083232960558845e-07,
        -8.119500214429922e-08,
        -1.2267763772554488e-06,
        1.9066693780155344e-06,
        -9.982279724521765e-07,
        -2.5913874269906854e-07,
        6.677152368364703e-08,
        1.4112599948853028e-06,
        -2.1731072307100357e-06,
        1.1183531719232954e-06,
        3.404331006671029e-07,
        -1.4328916398260877e-07,
        -1.527025978625275e-06,
        2.3752872505088826e-06,
        -1.1322635399450615e-06,
        -5.825429590798328e-07,
        3.947136953927999e-07,
        1.4916363569176166e-06,
        -2.427682403622084e-06,
        9.390601370030636e-07,
        1.1053698106900218e-06,
        -9.49288664528742e-07,
        -1.1787881821268093e-06,
        2.2000330678209557e-06,
        -3.883119549290783e-07,
        -2.0841476207701855e-06,
        1.9926379024900258e-06,
        4.067287011615645e-07,
        -1.5067995544000424e-06,
        -7.306011634051506e-07,
        3.760735818448593e-06,
        -3.777415656540574e-06,
        1.0683496459658441e-06,
        1.0405931622052095e-07,
        2.6910445553067895e-06,
        -6.444374982961183e-06,
        6.621229175225267e-06,
        -3.5415605288980464e-06,
        2.2949139786835525e-06,
        -5.806514907975013e-06,
        1.0488724394232413e-05,
        -1.0869461270488496e-05,
        7.31493847914934e-06,
        -5.951431024179721e-06,
        1.0365127536431621e-05,
        -1.6198027875569325e-05,
        1.6807017063691565e-05,
        -1.2549066041680764e-05,
        1.096993224714774e-05,
        -1.6415731553221627e-05,
        2.36731815690492e-05,
        -2.4356647997264722e-05,
        1.906317919064073e-05,
        -1.6839632846771703e-05,
        2.3548920262906967e-05,
        -3.216724416851542e-05,
        3.288908278495403e-05,
        -2.5348297179140988e-05,
        2.2316446517363565e-05,
        -2.9397928114470697e-05,
        4.028586922081433e-05,
        -3.889724282747674e-05,
        2.9366361784691685e-05,
        -2.1606334529519696e-05,
        3.176019893314439e-05,
        -3.974901673761139e-05,
        4.077683206798497e-05,
        -1.785048872404602e-05,
        1.411415268656098e-05,
        -1.0033515484961925e-05,
        3.4917286307433475e-05,
        -6.104011378006835e-06,
        3.876476598842336e-06,
        5.440374108572885e-05,
        -3.216093156509922e-06,
        6.325848217442541e-05,
        6.6403464379009055e-06,
        0.00016661860116303938,
        -3.9758031607260186e-05,
        0.00027620496783408035,
        3.311310383019021e-05,
        0.00043115696655197363,
        5.788577286031756e-05,
        0.0007957379864011552,
        0.00023985956208662378,
        0.0012142411428796753,
        0.0006691974868364116,
        0.002131039481607605,
        0.0013611909725314089,
        0.003590184761447433,
        0.0030597914818372195,
        0.006101274887398719,
        0.005968783837744395,
        0.010860461752467415,
        0.011679543093732106,
        0.018807867830389607,
        0.0223417652819016,
        0.03350209697858564,
        0.04103000000782165,
        0.058717478853401915,
        0.0745915852090646,
        0.10056526762436786,
        0.12812174590432332,
        0.165329027426399,
        0.20434734152064798,
        0.2410373943697608,
        0.2767707520248522,
        0.27090597466834654,
        0.23411618265438242,
        0.0829043663484602,
        -0.12075326153667124,
        -0.48413417740827325,
        -0.6756015637924936,
        -0.676884374456477,
        0.08481755491558415,
        0.8897349605079842,
        1.1562500883149975,
        -1.0625038654763015,
        -1.1899796724417744,
        1.701994754441702,
        -0.5560582385721063,
        -0.40974623007270716,
        0.6423846689343743,
        -0.4784979471352377,
        0.2544143693812516,
        -0.0991107884980294,
        0.019302960509869575,
        0.014602917719433929,
        -0.02815868764057919,
        0.03334067569324897,
        -0.03339657058664441,
        0.029713743066733685,
        -0.024532446628092903,
        0.019929022268840475,
        -0.01647320666604434,
        0.013552377475539019,
        -0.010642573598235137,
        0.007926941770725433,
        -0.005846251886359682,
        0.004454392840898614,
        -0.0033964900175332074,
        0.002374198552619342,
        -0.0014292762503980026,
        0.0007575605309465817,
        -0.0003887018472121119,
        0.0001468839833407115,
        0.00012319736122874125,
        -0.0003973094618558331,
        0.0005607791157476417,
        -0.0005875205819809159,
        0.0005715933818835505,
        -0.0006004495606012342,
        0.0006566430017432084,
        -0.0006660044419344737,
        0.0006073001482514092,
        -0.0005358001059647808,
        0.0005052734073179485,
        -0.0005031109876636467,
        0.000478859286601901,
        -0.00041611877684517433,
        0.00035014207403868844,
        -0.00031653432029360944,
        0.00030625910872636366,
        -0.0002837489149142037,
        0.0002365525089760999,
        -0.00018867311737178264,
        0.00016508992168613,
        -0.00015931254105261037,
        0.00014551046854317624,
        -0.0001142148480854569,
        8.260975401860396e-05,
        -6.900452319058575e-05,
        6.868593141380444e-05,
        -6.239677342524996e-05,
        4.285916094980237e-05,
        -2.2854176604556362e-05,
        1.625700664797665e-05,
        -1.9589081242320405e-05,
        1.815421979718186e-05,
        -6.2765579010866115e-06,
        -6.253778730286352e-06,
        8.646645774341667e-06,
        -3.517857797915492e-06,
        2.3187716237329078e-06,
        -9.545989612588998e-06,
        1.7524357674887816e-05,
        -1.768819087081248e-05,
        1.2043013646486916e-05,
        -9.678065465657495e-06,
        1.4211097062170638e-05,
        -1.95107122205848e-05,
        1.866112486542837e-05,
        -1.3229226635635206e-05,
        1.0548048989075464e-05,
        -1.3570543983464249e-05,
        1.7321108153670785e-05,
        -1.6135850500474437e-05,
        1.1260742867568003e-05,
        -8.697705524487734e-06,
        1.0888874700729656e-05,
        -1.3742094190704191e-05,
        1.2561342789910995e-05,
        -8.353436617546674e-06,
        6.093606084489704e-06,
        -7.825404814974857e-06,
        1.0143745229138088e-05,
        -9.112820336008217e-06,
        5.557968577420229e-06,
        -3.6499472051212587e-06,
        5.116749495551891e-06,
        -7.095597741925178e-06,
        6.256006323392929e-06,
        -3.2832150468624806e-06,
        1.708623197844929e-06,
        -3.0070231440181056e-06,
        4.749252003054393e-06,
        -4.092638588240644e-06,
        1.6125301326513119e-06,
        -3.256772064682522e-07,
        1.501218953553646e-06,
        -3.060695236251009e-06,
        2.5587958487905923e-06,
        -4.834080074148077e-07,
        -5.677533998648717e-07,
        -5.05573383673749e-07,
        1.911511992412161e-06,
        -1.5315873607641368e-06,
        -2.1683592437792986e-07,
        1.0807640362591382e-06,
        -9.998697348953596e-08,
        -1.1700098723056667e-06,
        8.819654179759654e-07,
        6.042897304795128e-07,
        -1.3219985693424889e-06,
        4.281306304178779e-07,
        7.184954660975772e-07,
        -4.975094439564283e-07,
        -7.786875730448051e-07,
        1.3830250975010719e-06,
        -5.713004805248258e-07,
        -4.6257997708576195e-07,
        2.8948035568191635e-07,
        8.176633753895421e-07,
        -1.3340317922374424e-06,
        5.993759537611448e-07,
        3.316924781758116e-07,
        -1.9233579272655235e-07,
        -7.776230254637702e-07,
        1.2252260689825009e-06,
        -5.620118856945786e-07,
        -2.7585935733717325e-07,
        1.6017467283784536e-07,
        6.972353475237772e-07,
        -1.0903918524632375e-06,
        4.925867722595156e-07,
        2.61378322538123e-07,
        -1.624005916412236e-07,
        -6.015142797463099e-07,
        9.50832224989168e-07,
        -4.1226038494091774e-07,
        -2.6663724121695596e-07,
        1.7966801734484448e-07,
        5.05566144948539e-07,
        -8.189070241889383e-07,
        3.335003069107888e-07,
        2.785811261574287e-07,
        -2.0051768660765492e-07,
        -4.1766210719309166e-07,
        7.008924370114342e-07,
        -2.628831648601071e-07,
        -2.899495700589853e-07,
        2.1877718750229588e-07,
        3.415869509163124e-07,
        -5.991427962579124e-07,
        2.031893402577374e-07,
        2.9723056211956833e-07,
        -2.316538002262926e-07,
        -2.783438550720363e-07,
        5.136433663838739e-07,
        -1.548967241335905e-07,
        -2.9920969065034145e-07,
        2.3839380096087415e-07,
        2.2733801046138605e-07,
    ],
};

pub static SINE_241: DigitalFilter = DigitalFilter {
    spacing: 0.19188209108283716,
    base: &[
        9.99999999999996e-11,
        1.2115276586285857e-10,
        1.4677992676220685e-10,
        1.778279410038918e-10,
        2.1544346900318812e-10,
        2.6101572156825287e-10,
        3.1622776601683744e-10,
        3.831186849557274e-10,
        4.6415888336127696e-10,
        5.623413251903488e-10,
        6.812920690579596e-10,
        8.254041852680177e-10,
        9.999999999999972e-10,
        1.2115276586285868e-09,
        1.4677992676220647e-09,
        1.7782794100389197e-09,
        2.1544346900318837e-09,
        2.6101572156825312e-09,
        3.162277660168378e-09,
        3.8311868495572786e-09,
        4.6415888336127745e-09,
        5.6234132519034744e-09,
        6.812920690579604e-09,
        8.254041852680156e-09,
        9.999999999999982e-09,
        1.2115276586285883e-08,
        1.4677992676220664e-08,
        1.7782794100389218e-08,
        2.1544346900318783e-08,
        2.610157215682534e-08,
        3.16227766016837e-08,
        3.831186849557282e-08,
        4.6415888336127635e-08,
        5.6234132519034806e-08,
        6.812920690579612e-08,
        8.254041852680166e-08,
        9.999999999999994e-08,
        1.2115276586285875e-07,
        1.467799267622068e-07,
        1.7782794100389206e-07,
        2.1544346900318806e-07,
        2.6101572156825326e-07,
        3.1622776601683734e-07,
        3.8311868495572797e-07,
        4.6415888336127683e-07,
        5.623413251903487e-07,
        6.812920690579606e-07,
        8.254041852680175e-07,
        9.999999999999987e-07,
        1.2115276586285867e-06,
        1.467799267622067e-06,
        1.7782794100389193e-06,
        2.154434690031883e-06,
        2.6101572156825353e-06,
        3.162277660168377e-06,
        3.831186849557284e-06,
        4.6415888336127735e-06,
        5.623413251903484e-06,
        6.812920690579602e-06,
        8.25404185268017e-06,
        9.99999999999998e-06,
        1.2115276586285879e-05,
        1.4677992676220687e-05,
        1.7782794100389212e-05,
        2.1544346900318816e-05,
        2.6101572156825336e-05,
        3.162277660168375e-05,
        3.8311868495572815e-05,
        4.6415888336127784e-05,
        5.6234132519034893e-05,
        6.81292069057961e-05,
        8.254041852680179e-05,
        9.999999999999991e-05,
        0.00012115276586285871,
        0.00014677992676220676,
        0.00017782794100389203,
        0.00021544346900318802,
        0.00026101572156825363,
        0.00031622776601683783,
        0.0003831186849557286,
        0.00046415888336127757,
        0.0005623413251903486,
        0.0006812920690579605,
        0.000825404185268018,
        0.0009999999999999994,
        0.0012115276586285874,
        0.0014677992676220694,
        0.001778279410038922,
        0.0021544346900318825,
        0.002610157215682535,
        0.0031622776601683764,
        0.0038311868495572864,
        0.004641588833612776,
        0.005623413251903487,
        0.006812920690579613,
        0.008254041852680182,
        0.009999999999999995,
        0.012115276586285877,
        0.014677992676220683,
        0.017782794100389226,
        0.02154434690031883,
        0.02610157215682535,
        0.031622776601683784,
        0.03831186849557287,
        0.046415888336127774,
        0.056234132519034884,
        0.06812920690579612,
        0.08254041852680184,
        0.09999999999999998,
        0.1211527658628588,
        0.1467799267622069,
        0.17782794100389226,
        0.21544346900318834,
        0.26101572156825364,
        0.3162277660168379,
        0.3831186849557287,
        0.46415888336127786,
        0.5623413251903491,
        0.6812920690579612,
        0.8254041852680184,
        1.0,
        1.2115276586285884,
        1.4677992676220695,
        1.778279410038923,
        2.154434690031884,
        2.6101572156825372,
        3.1622776601683795,
        3.8311868495572883,
        4.641588833612779,
        5.623413251903492,
        6.812920690579614,
        8.254041852680187,
        10.000000000000002,
        12.115276586285885,
        14.677992676220699,
        17.782794100389236,
        21.544346900318843,
        26.10157215682537,
        31.622776601683803,
        38.311868495572895,
        46.41588833612781,
        56.234132519034915,
        68.12920690579618,
        82.5404185268019,
        100.00000000000004,
        121.15276586285887,
        146.77992676220697,
        177.82794100389242,
        215.44346900318848,
        261.01572156825375,
        316.22776601683825,
        383.11868495572907,
        464.15888336127813,
        562.3413251903493,
        681.2920690579614,
        825.4041852680191,
        1000.0000000000007,
        1211.527658628589,
        1467.7992676220713,
        1778.2794100389244,
        2154.434690031885,
        2610.157215682538,
        3162.2776601683804,
        3831.186849557288,
        4641.588833612786,
        5623.413251903499,
        6812.920690579622,
        8254.041852680193,
        10000.00000000001,
        12115.276586285892,
        14677.992676220701,
        17782.794100389234,
        21544.346900318837,
        26101.57215682541,
        31622.77660168384,
        38311.868495572926,
        46415.888336127835,
        56234.13251903495,
        68129.20690579616,
        82540.41852680188,
        100000.0000000002,
        121152.76586285906,
        146779.92676220718,
        177827.9410038925,
        215443.46900318863,
        261015.72156825394,
        316227.76601683814,
        383118.684955729,
        464158.88336127804,
        562341.3251903502,
        681292.0690579624,
        825404.1852680197,
        1000000.0000000013,
        1211527.6586285897,
        1467799.2676220709,
        1778279.410038924,
        2154434.6900318884,
        2610157.215682542,
        3162277.660168385,
        3831186.849557294,
        4641588.833612786,
        5623413.251903498,
        6812920.69057962,
        8254041.852680191,
        10000000.000000006,
        12115276.586285912,
        14677992.676220698,
        17782794.10038926,
        21544346.90031891,
        26101572.156825405,
        31622776.60168389,
        38311868.49557292,
        46415888.33612791,
        56234132.51903494,
        68129206.90579627,
        82540418.52680185,
        100000000.00000018,
        121152765.86285925,
        146779926.76220715,
        177827941.00389278,
        215443469.00318858,
        261015721.56825432,
        316227766.0168381,
        383118684.95572954,
        464158883.36127794,
        562341325.19035,
        681292069.0579635,
        825404185.2680194,
        1000000000.0000029,
        1211527658.6285894,
        1467799267.6220732,
        1778279410.0389235,
        2154434690.031888,
        2610157215.682546,
        3162277660.1683846,
        3831186849.5573,
        4641588833.612784,
        5623413251.903506,
        6812920690.579618,
        8254041852.680203,
        10000000000.00004,
    ],
    weights: &[
        -8.085748034599244e-07,
        9.196220811173364e-07,
        -1.6991828084553037e-07,
        -4.048178284086693e-07,
        -3.198876956843538e-08,
        9.25042483773804e-07,
        -1.0458433694921633e-06,
        1.9799925399930434e-07,
        4.54940450607596e-07,
        3.019485073469287e-08,
        -1.0299436021867742e-06,
        1.1585343269893296e-06,
        -1.9159954132174673e-07,
        -5.575608133239291e-07,
        2.0281273554808297e-08,
        1.1001975867757771e-06,
        -1.2328027650061038e-06,
        1.1966623223021292e-07,
        7.493297243129805e-07,
        -1.5673746622264603e-07,
        -1.1002421003776186e-06,
        1.2306823068254458e-06,
        6.372128821812871e-08,
        -1.0833726217162004e-06,
        4.330787735153432e-07,
        9.78545709304431e-07,
        -1.0977452335455984e-06,
        -4.2301124626530374e-07,
        1.6331127373478174e-06,
        -9.232281899392316e-07,
        -6.64953782341377e-07,
        7.608737194679041e-07,
        1.0434819040943237e-06,
        -2.494461713324456e-06,
        1.7223503311328056e-06,
        7.096544367363975e-08,
        -1.296069159964914e-07,
        -2.0294987689626923e-06,
        3.7833693556950773e-06,
        -2.9424039373897603e-06,
        9.029853903064451e-07,
        -8.943082388550818e-07,
        3.493620909838759e-06,
        -5.6230691481020724e-06,
        4.6955555288694285e-06,
        -2.3457912336314833e-06,
        2.390779839366979e-06,
        -5.527372610229536e-06,
        8.110914497957345e-06,
        -7.054032179131559e-06,
        4.28645105484572e-06,
        -4.3641239352116265e-06,
        8.137896997505321e-06,
        -1.124757837811254e-05,
        9.967129195629043e-06,
        -6.595558118603722e-06,
        6.630622284999742e-06,
        -1.1124543924088796e-05,
        1.4800648882316728e-05,
        -1.3104295387826199e-05,
        8.802765968967234e-06,
        -8.612795513507217e-06,
        1.3855196750835056e-05,
        -1.805966315425613e-05,
        1.5577675327720144e-05,
        -9.777989440276976e-06,
        8.98511350412692e-06,
        -1.4884016942059916e-05,
        1.9424307228447444e-05,
        -1.547901967368058e-05,
        7.209675115310783e-06,
        -5.0960696898537786e-06,
        1.1345949693295678e-05,
        -1.5751802801813046e-05,
        9.174607953914368e-06,
        3.204758618748588e-06,
        -7.874344165959567e-06,
        1.9545276780453153e-06,
        1.484963317801007e-06,
        9.72884807819537e-06,
        -2.8747570643008718e-05,
        3.8147884915001694e-05,
        -3.3438628310837495e-05,
        3.2620431304622384e-05,
        -5.102274626940775e-05,
        8.129087277576333e-05,
        -9.749166552550006e-05,
        9.663872698370057e-05,
        -9.805806207438002e-05,
        0.0001305541763869109,
        -0.00017330410705705093,
        0.0002060683069344858,
        -0.00020024619854871437,
        0.0002176054389893349,
        -0.00024842312863558445,
        0.0003384516954556337,
        -0.0003471045211363814,
        0.0003935699486556582,
        -0.0003291252245100749,
        0.0004914148600053452,
        -0.00043309243515634774,
        0.0006983786334576498,
        -0.00034918453640468493,
        0.000796252180952556,
        -0.00015449753855107369,
        0.001269059780085352,
        0.00022064384121895538,
        0.0018412279554000045,
        0.0015380699171357185,
        0.0031440940180437944,
        0.0037754219281243917,
        0.006197954124706713,
        0.009168069427404162,
        0.011995436858929048,
        0.020224289209373133,
        0.025769652308153257,
        0.04239285088028893,
        0.05341559396554023,
        0.08841512791234715,
        0.1086805675098605,
        0.17054230205964432,
        0.20605719863275265,
        0.29652821611155544,
        0.311353313106526,
        0.3721731524044977,
        0.22472348300239026,
        0.019658076909647965,
        -0.5117012627465588,
        -0.8228512507195517,
        -0.7410736852858483,
        0.7075101382210961,
        1.5433306285002315,
        -1.4070156010241839,
        -0.1835780025292638,
        0.8905263831301051,
        -0.7001564113878204,
        0.32008194317957933,
        -0.06627602909670659,
        -0.04432837239738583,
        0.0722910862906139,
        -0.06867897091481563,
        0.05876708978881866,
        -0.04915192426447298,
        0.039458531755648424,
        -0.029689474564358477,
        0.021309189064588997,
        -0.015341871511033726,
        0.011331261963524368,
        -0.008169659664408373,
        0.005321892834468759,
        -0.0030142261687587896,
        0.0015342756092984432,
        -0.0007093170133979042,
        0.0001019623797478021,
        0.0005097089427270285,
        -0.0010089331085142057,
        0.001231933225042049,
        -0.0012303843535458703,
        0.0012011777120795192,
        -0.0012461206362707775,
        0.001291675681854674,
        -0.0012343395165093842,
        0.001089193307489879,
        -0.0009594541915007555,
        0.0008995392706604044,
        -0.0008616769036027348,
        0.0007780305615913206,
        -0.0006526268070713418,
        0.0005465773001888479,
        -0.0004929350192153039,
        0.0004599249208835992,
        -0.0004016262948212739,
        0.0003187338999631663,
        -0.0002508231877499304,
        0.0002199253681330883,
        -0.0002043134933366695,
        0.00017188676082389927,
        -0.00012239337862999868,
        8.316520884834402e-05,
        -6.985458410393408e-05,
        6.716081678773733e-05,
        -5.194351871817184e-05,
        2.3737929507837212e-05,
        -2.318325393320382e-06,
        -6.978929356544418e-07,
        -3.5965471908729213e-06,
        -1.958006568716093e-06,
        1.782614254343568e-05,
        -2.9198831392020113e-05,
        2.718180492367837e-05,
        -2.003900683744204e-05,
        2.082186898327772e-05,
        -2.9943754454109434e-05,
        3.601484586520627e-05,
        -3.2065803035293805e-05,
        2.4407011007079368e-05,
        -2.318964053804966e-05,
        2.877210396091328e-05,
        -3.220535315600515e-05,
        2.7927177218851002e-05,
        -2.086293514428941e-05,
        1.9063650860734327e-05,
        -2.2840380337129888e-05,
        2.5036219067574423e-05,
        -2.114384499714262e-05,
        1.5082056740330586e-05,
        -1.3345524683027059e-05,
        1.6206398644515138e-05,
        -1.7854012822467913e-05,
        1.4587735919692753e-05,
        -9.578001482734432e-06,
        8.141877906624342e-06,
        -1.0519496644287079e-05,
        1.1930884564629882e-05,
        -9.302495029803954e-06,
        5.236783045652905e-06,
        -4.143122321623299e-06,
        6.234846068788014e-06,
        -7.534046281068941e-06,
        5.461546788345481e-06,
        -2.1807231951381855e-06,
        1.3896955306844692e-06,
        -3.278950780076826e-06,
        4.5036938727790395e-06,
        -2.8793633178475993e-06,
        2.2431400244300907e-07,
        3.2884154758077537e-07,
        1.3906135073133914e-06,
        -2.5440127812306308e-06,
        1.2653277855044976e-06,
        9.021409603257131e-07,
        -1.281257622433405e-06,
        -2.8140593947949076e-07,
        1.3564436781396534e-06,
        -3.375862556040637e-07,
        -1.4539610309256444e-06,
        1.7121605655707641e-06,
        -2.988054372139327e-07,
        -6.910782147706854e-07,
        -1.349506177124213e-07,
        1.6370628329663727e-06,
    ],
};

